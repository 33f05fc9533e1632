#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace commdet {

/// Immutable simple undirected graph over dense 0-based node ids.
/// Construction collapses duplicate edges and drops self-loops; the
/// label<->index dictionary is kept for I/O.
class Graph {
public:
    Graph() = default;

    /// Build from integer edge pairs. `labels` may be empty (labels default to
    /// the decimal node index) or must have exactly `node_count` entries.
    /// Throws std::invalid_argument on an empty node universe or an edge
    /// endpoint outside [0, node_count).
    static Graph build(int node_count, std::span<const std::pair<int, int>> edges,
                       std::vector<std::string> labels = {});

    int node_count() const { return static_cast<int>(offsets_.size()) - 1; }
    std::int64_t edge_count() const { return edge_count_; }

    std::span<const int> neighbors(int v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(int u, int v) const;

    const std::string& label(int v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }
    /// -1 when the label is unknown.
    int index_of(const std::string& label) const;

    /// All edges as (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    std::uint64_t content_hash() const;

private:
    std::vector<int> offsets_{0};
    std::vector<int> adj_;
    std::vector<std::string> labels_;
    std::map<std::string, int> label_index_;
    std::int64_t edge_count_ = 0;
};

/// Incremental construction with string labels. With an open universe, labels
/// are registered on first use in a stable first-appearance order; after
/// declare_universe, unknown labels throw.
class GraphBuilder {
public:
    /// Restrict the node set to exactly `labels` (also fixes the id order).
    void declare_universe(const std::vector<std::string>& labels);
    /// Register a node, returning its dense id.
    int add_node(const std::string& label);
    void add_edge(const std::string& u, const std::string& v);
    Graph build() const;

private:
    int lookup(const std::string& label);
    std::vector<std::string> labels_;
    std::map<std::string, int> index_;
    std::vector<std::pair<int, int>> edges_;
    bool closed_ = false;
};

/// Disjoint assignment of every node to exactly one community.
/// Community ids are dense 0..k-1, numbered by smallest contained node.
struct Partition {
    std::vector<int> assignment;            // node -> community id
    std::vector<std::vector<int>> members;  // community -> sorted node ids

    int community_count() const { return static_cast<int>(members.size()); }

    /// Normalize an arbitrary labeling into canonical form.
    static Partition from_assignment(const std::vector<int>& raw);
    static Partition singletons(int node_count);

    bool operator==(const Partition& other) const { return assignment == other.assignment; }
};

/// Communities are exactly the connected components.
Partition connected_components(const Graph& g);

/// Subgraph over `keep` (node ids, any order, no duplicates) with all edges
/// among them; original labels preserved. Kept nodes are re-indexed in
/// ascending original-id order.
Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);

/// Edge-list text format: one edge per line, two whitespace-separated labels,
/// lines starting with '#' ignored, UTF-8.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

}  // namespace commdet
