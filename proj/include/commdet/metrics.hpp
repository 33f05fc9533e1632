#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "commdet/behavior.hpp"
#include "commdet/graph.hpp"

namespace commdet {

/// `newman` is the cited measure: sum of internal-edge fraction minus squared
/// endpoint fraction, which keeps scores in [-1/2, 1). `paper_literal` squares
/// the fraction of edges with at least one endpoint in the community instead.
enum class ModularityVariant { newman, paper_literal };

const char* to_string(ModularityVariant v);
std::optional<ModularityVariant> modularity_variant_from_string(const std::string& name);

/// Per-community edge counters for a partition of a fixed graph.
/// internal and degree sums are maintained; boundary (exactly one endpoint
/// inside) and incident (at least one endpoint inside) derive from them.
struct PartitionStats {
    std::vector<std::int64_t> internal_edges;
    std::vector<std::int64_t> degree_sums;
    std::vector<int> assignment;
    std::int64_t total_edges = 0;

    std::int64_t boundary_edges(int c) const { return degree_sums[c] - 2 * internal_edges[c]; }
    std::int64_t incident_edges(int c) const { return degree_sums[c] - internal_edges[c]; }
    int community_count() const { return static_cast<int>(internal_edges.size()); }
};

PartitionStats partition_stats(const Graph& g, const Partition& p);

/// Throws std::invalid_argument on an edgeless graph (modularity undefined).
double modularity(const PartitionStats& stats, ModularityVariant variant);
double modularity(const Graph& g, const Partition& p, ModularityVariant variant);

/// Q(after) - Q(before) for moving `node` from its community to `to_comm`,
/// in O(deg(node)). Throws std::invalid_argument when `node` is not currently
/// in `from_comm`.
double modularity_delta(const PartitionStats& stats, const Graph& g, int node, int from_comm,
                        int to_comm, ModularityVariant variant);

/// Counter-level form of the same gain, for callers that maintain their own
/// working-graph counters: node of degree `k_x` with `k_own` edges into its
/// current community (excluding itself) and `k_target` into the target.
/// Degree sums include the node's own degree.
double move_gain(std::int64_t total_edges, std::int64_t k_x, std::int64_t k_own,
                 std::int64_t k_target, std::int64_t degree_from, std::int64_t degree_to,
                 std::int64_t internal_from, std::int64_t internal_to,
                 ModularityVariant variant);

/// Apply the move to the counters and assignment.
void apply_move(PartitionStats& stats, const Graph& g, int node, int to_comm);

/// Mean similarity over intra-community pairs u < v; 0 when no such pair
/// exists (all-singleton partition).
double like_mindedness(const SimMatrix& s, const Partition& p);

/// Thrown when the non-edge pairs sum to zero similarity, so the homophily
/// ratio would divide by zero.
struct ZeroDenominatorError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Mean similarity of adjacent pairs over mean similarity of non-adjacent
/// pairs. Throws std::invalid_argument when undefined (no edges, or no
/// non-edge pairs) and ZeroDenominatorError when the non-edge mean is zero.
double homophily_ratio(const Graph& g, const SimMatrix& s);

struct NetworkStats {
    int node_count = 0;
    int isolated_count = 0;
    std::int64_t edge_count = 0;
    double avg_degree = 0.0;
    double avg_clustering_coefficient = 0.0;
    int diameter = 0;                       // of the giant component
    double avg_path_length = 0.0;           // over connected pairs in the giant component
    double giant_component_fraction = 0.0;  // |largest component| / |V|
};

NetworkStats network_stats(const Graph& g);

/// Two-column text table; homophily prints as "Not calculated" when absent.
std::string stats_table(const NetworkStats& stats,
                        std::optional<double> homophily = std::nullopt);
std::string stats_json(const NetworkStats& stats,
                       std::optional<double> homophily = std::nullopt);

}  // namespace commdet
