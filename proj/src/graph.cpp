#include "commdet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace commdet {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

}  // namespace

Graph Graph::build(int node_count, std::span<const std::pair<int, int>> edges,
                   std::vector<std::string> labels) {
    if (node_count <= 0)
        throw std::invalid_argument("graph must have at least one node");
    if (!labels.empty() && static_cast<int>(labels.size()) != node_count)
        throw std::invalid_argument("label list size does not match node count");

    std::vector<std::pair<int, int>> normalized;
    normalized.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || u >= node_count || v < 0 || v >= node_count)
            throw std::invalid_argument("edge endpoint outside node universe");
        if (u == v)
            continue;  // self-loops dropped
        normalized.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(normalized.begin(), normalized.end());
    normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());

    Graph g;
    std::vector<int> deg(node_count, 0);
    for (auto [u, v] : normalized) {
        ++deg[u];
        ++deg[v];
    }
    g.offsets_.assign(node_count + 1, 0);
    for (int v = 0; v < node_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adj_.resize(g.offsets_[node_count]);
    std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : normalized) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    for (int v = 0; v < node_count; ++v)
        std::sort(g.adj_.begin() + g.offsets_[v], g.adj_.begin() + g.offsets_[v + 1]);
    g.edge_count_ = static_cast<std::int64_t>(normalized.size());

    if (labels.empty()) {
        g.labels_.reserve(node_count);
        for (int v = 0; v < node_count; ++v) g.labels_.push_back(std::to_string(v));
    } else {
        g.labels_ = std::move(labels);
    }
    for (int v = 0; v < node_count; ++v) {
        auto [it, inserted] = g.label_index_.emplace(g.labels_[v], v);
        if (!inserted)
            throw std::invalid_argument("duplicate node label: " + g.labels_[v]);
    }
    return g;
}

bool Graph::has_edge(int u, int v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::index_of(const std::string& label) const {
    auto it = label_index_.find(label);
    return it == label_index_.end() ? -1 : it->second;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < node_count(); ++u)
        for (int v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::uint64_t Graph::content_hash() const {
    std::uint64_t h = kFnvOffset;
    int n = node_count();
    h = fnv1a(h, &n, sizeof n);
    h = fnv1a(h, adj_.data(), adj_.size() * sizeof(int));
    h = fnv1a(h, offsets_.data(), offsets_.size() * sizeof(int));
    for (const auto& l : labels_) h = fnv1a(h, l.data(), l.size());
    return h;
}

void GraphBuilder::declare_universe(const std::vector<std::string>& labels) {
    for (const auto& l : labels) add_node(l);
    closed_ = true;
}

int GraphBuilder::add_node(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    if (closed_)
        throw std::invalid_argument("unresolvable node label: " + label);
    int id = static_cast<int>(labels_.size());
    labels_.push_back(label);
    index_.emplace(label, id);
    return id;
}

void GraphBuilder::add_edge(const std::string& u, const std::string& v) {
    // two statements: the argument evaluation order inside one call is
    // unspecified, and registration order must follow appearance order
    const int ui = lookup(u);
    const int vi = lookup(v);
    edges_.emplace_back(ui, vi);
}

int GraphBuilder::lookup(const std::string& label) { return add_node(label); }

Graph GraphBuilder::build() const {
    if (labels_.empty())
        throw std::invalid_argument("graph must have at least one node");
    return Graph::build(static_cast<int>(labels_.size()), edges_, labels_);
}

Partition Partition::from_assignment(const std::vector<int>& raw) {
    Partition p;
    p.assignment.assign(raw.size(), -1);
    // Dense ids in order of smallest contained node: first appearance while
    // scanning ascending node ids.
    std::map<int, int> remap;
    for (std::size_t v = 0; v < raw.size(); ++v) {
        auto [it, inserted] = remap.emplace(raw[v], static_cast<int>(remap.size()));
        p.assignment[v] = it->second;
        (void)inserted;
    }
    p.members.resize(remap.size());
    for (std::size_t v = 0; v < raw.size(); ++v)
        p.members[p.assignment[v]].push_back(static_cast<int>(v));
    return p;
}

Partition Partition::singletons(int node_count) {
    Partition p;
    p.assignment.resize(node_count);
    p.members.resize(node_count);
    for (int v = 0; v < node_count; ++v) {
        p.assignment[v] = v;
        p.members[v] = {v};
    }
    return p;
}

Partition connected_components(const Graph& g) {
    int n = g.node_count();
    std::vector<int> comp(n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        int id = next++;
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : g.neighbors(u)) {
                if (comp[v] == -1) {
                    comp[v] = id;
                    stack.push_back(v);
                }
            }
        }
    }
    return Partition::from_assignment(comp);
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != keep.size())
        throw std::invalid_argument("keep set contains duplicate nodes");
    std::vector<int> to_new(g.node_count(), -1);
    std::vector<std::string> labels;
    labels.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        int v = sorted[i];
        if (v < 0 || v >= g.node_count())
            throw std::invalid_argument("keep set contains unknown node");
        to_new[v] = static_cast<int>(i);
        labels.push_back(g.label(v));
    }
    std::vector<std::pair<int, int>> edges;
    for (int u : sorted)
        for (int v : g.neighbors(u))
            if (u < v && to_new[v] != -1) edges.emplace_back(to_new[u], to_new[v]);
    return Graph::build(static_cast<int>(sorted.size()), edges, std::move(labels));
}

Graph read_edge_list(std::istream& in) {
    GraphBuilder b;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string u, v, extra;
        if (!(ls >> u >> v) || (ls >> extra))
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": expected two whitespace-separated labels");
        b.add_edge(u, v);
    }
    return b.build();
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open edge list file: " + path);
    return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (int v = 0; v < g.node_count(); ++v)
        if (g.label(v).find_first_of(" \t\r\n") != std::string::npos)
            throw std::runtime_error("label not representable in edge list format: " + g.label(v));
    for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
    // an isolated node is written as a self-loop, which build() drops while
    // keeping the label in the universe, so the graph round-trips exactly
    for (int v = 0; v < g.node_count(); ++v)
        if (g.degree(v) == 0) out << g.label(v) << ' ' << g.label(v) << '\n';
}

void write_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write edge list file: " + path);
    write_edge_list(g, out);
}

}  // namespace commdet
