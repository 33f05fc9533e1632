#include "commdet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace commdet {

const char* to_string(ModularityVariant v) {
    return v == ModularityVariant::newman ? "newman" : "paper-literal";
}

std::optional<ModularityVariant> modularity_variant_from_string(const std::string& name) {
    if (name == "newman") return ModularityVariant::newman;
    if (name == "paper-literal" || name == "paper_literal" || name == "literal")
        return ModularityVariant::paper_literal;
    return std::nullopt;
}

PartitionStats partition_stats(const Graph& g, const Partition& p) {
    if (static_cast<int>(p.assignment.size()) != g.node_count())
        throw std::invalid_argument("partition does not cover the graph's nodes");
    PartitionStats stats;
    int k = p.community_count();
    stats.internal_edges.assign(k, 0);
    stats.degree_sums.assign(k, 0);
    stats.assignment = p.assignment;
    stats.total_edges = g.edge_count();
    for (int u = 0; u < g.node_count(); ++u) {
        int cu = p.assignment[u];
        stats.degree_sums[cu] += g.degree(u);
        for (int v : g.neighbors(u))
            if (u < v && p.assignment[v] == cu) ++stats.internal_edges[cu];
    }
    return stats;
}

double modularity(const PartitionStats& stats, ModularityVariant variant) {
    if (stats.total_edges == 0)
        throw std::invalid_argument("modularity undefined on an edgeless graph");
    const double m = static_cast<double>(stats.total_edges);
    double q = 0.0;
    for (int c = 0; c < stats.community_count(); ++c) {
        double a = static_cast<double>(stats.internal_edges[c]) / m;
        double b = variant == ModularityVariant::newman
                       ? static_cast<double>(stats.degree_sums[c]) / (2.0 * m)
                       : static_cast<double>(stats.incident_edges(c)) / m;
        q += a - b * b;
    }
    return q;
}

double modularity(const Graph& g, const Partition& p, ModularityVariant variant) {
    return modularity(partition_stats(g, p), variant);
}

namespace {

// Edges from `node` into its own community (excluding itself) and into `to`.
std::pair<int, int> links_to(const PartitionStats& stats, const Graph& g, int node, int to) {
    int own = 0, target = 0;
    int from = stats.assignment[node];
    for (int v : g.neighbors(node)) {
        int c = stats.assignment[v];
        if (c == from) ++own;
        if (c == to) ++target;
    }
    return {own, target};
}

}  // namespace

double modularity_delta(const PartitionStats& stats, const Graph& g, int node, int from_comm,
                        int to_comm, ModularityVariant variant) {
    if (node < 0 || node >= g.node_count() || from_comm < 0 ||
        from_comm >= stats.community_count() || to_comm < 0 ||
        to_comm >= stats.community_count())
        throw std::invalid_argument("modularity delta: node or community out of range");
    if (stats.assignment[node] != from_comm)
        throw std::invalid_argument("modularity delta: node is not in from_comm");
    if (from_comm == to_comm) return 0.0;

    auto [k_own, k_target] = links_to(stats, g, node, to_comm);
    return move_gain(stats.total_edges, g.degree(node), k_own, k_target,
                     stats.degree_sums[from_comm], stats.degree_sums[to_comm],
                     stats.internal_edges[from_comm], stats.internal_edges[to_comm], variant);
}

double move_gain(std::int64_t total_edges, std::int64_t k_x, std::int64_t k_own,
                 std::int64_t k_target, std::int64_t degree_from, std::int64_t degree_to,
                 std::int64_t internal_from, std::int64_t internal_to,
                 ModularityVariant variant) {
    const double m = static_cast<double>(total_edges);
    const double kx = static_cast<double>(k_x);
    const double d_from = static_cast<double>(degree_from);
    const double d_to = static_cast<double>(degree_to);

    if (variant == ModularityVariant::newman)
        return static_cast<double>(k_target - k_own) / m -
               kx * (d_to - d_from + kx) / (2.0 * m * m);

    const double i_from = static_cast<double>(internal_from);
    const double i_to = static_cast<double>(internal_to);
    double b_from = (d_from - i_from) / m;
    double b_to = (d_to - i_to) / m;
    double b_from_after = (d_from - kx - (i_from - static_cast<double>(k_own))) / m;
    double b_to_after = (d_to + kx - (i_to + static_cast<double>(k_target))) / m;
    return static_cast<double>(k_target - k_own) / m -
           (b_from_after * b_from_after - b_from * b_from + b_to_after * b_to_after - b_to * b_to);
}

void apply_move(PartitionStats& stats, const Graph& g, int node, int to_comm) {
    int from = stats.assignment[node];
    if (from == to_comm) return;
    auto [k_own, k_target] = links_to(stats, g, node, to_comm);
    stats.internal_edges[from] -= k_own;
    stats.internal_edges[to_comm] += k_target;
    stats.degree_sums[from] -= g.degree(node);
    stats.degree_sums[to_comm] += g.degree(node);
    stats.assignment[node] = to_comm;
}

double like_mindedness(const SimMatrix& s, const Partition& p) {
    long double sum = 0.0L;
    std::int64_t pairs = 0;
    for (const auto& community : p.members) {
        for (std::size_t i = 0; i < community.size(); ++i)
            for (std::size_t j = i + 1; j < community.size(); ++j)
                sum += s(community[i], community[j]);
        std::int64_t sz = static_cast<std::int64_t>(community.size());
        pairs += sz * (sz - 1) / 2;
    }
    if (pairs == 0) return 0.0;
    return static_cast<double>(sum / pairs);
}

double homophily_ratio(const Graph& g, const SimMatrix& s) {
    if (g.node_count() != s.size())
        throw std::invalid_argument("homophily ratio: graph and similarity size mismatch");
    const std::int64_t n = g.node_count();
    const std::int64_t m = g.edge_count();
    const std::int64_t all_pairs = n * (n - 1) / 2;
    if (m == 0)
        throw std::invalid_argument("homophily ratio undefined: graph has no edges");
    if (all_pairs == m)
        throw std::invalid_argument("homophily ratio undefined: graph has no non-edge pairs");

    long double edge_sum = 0.0L;
    for (auto [u, v] : g.edges()) edge_sum += s(u, v);
    long double total_sum = 0.0L;
    for (double x : s.packed()) total_sum += x;
    long double non_edge_sum = total_sum - edge_sum;

    double edge_mean = static_cast<double>(edge_sum / m);
    double non_edge_mean = static_cast<double>(non_edge_sum / (all_pairs - m));
    if (non_edge_mean == 0.0)
        throw ZeroDenominatorError("homophily ratio: non-edge pairs have zero mean similarity");
    return edge_mean / non_edge_mean;
}

NetworkStats network_stats(const Graph& g) {
    NetworkStats out;
    const int n = g.node_count();
    out.node_count = n;
    out.edge_count = g.edge_count();
    out.avg_degree = 2.0 * static_cast<double>(g.edge_count()) / n;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 0) ++out.isolated_count;

    // local clustering coefficient, degree < 2 contributes 0
    double cc_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        int deg = static_cast<int>(nb.size());
        if (deg < 2) continue;
        std::int64_t links = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (g.has_edge(nb[i], nb[j])) ++links;
        cc_sum += 2.0 * static_cast<double>(links) / (static_cast<double>(deg) * (deg - 1));
    }
    out.avg_clustering_coefficient = cc_sum / n;

    Partition comps = connected_components(g);
    const std::vector<int>* giant = &comps.members[0];
    for (const auto& c : comps.members)
        if (c.size() > giant->size()) giant = &c;
    out.giant_component_fraction = static_cast<double>(giant->size()) / n;

    // BFS from every giant-component node
    std::int64_t dist_sum = 0;
    std::int64_t pair_count = 0;
    int diameter = 0;
    std::vector<int> dist(n);
    std::queue<int> queue;
    for (int s : *giant) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop();
            for (int v : g.neighbors(u)) {
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    queue.push(v);
                }
            }
        }
        for (int t : *giant) {
            if (t <= s) continue;
            dist_sum += dist[t];
            ++pair_count;
            diameter = std::max(diameter, dist[t]);
        }
    }
    out.diameter = diameter;
    out.avg_path_length = pair_count == 0 ? 0.0 : static_cast<double>(dist_sum) / pair_count;
    return out;
}

std::string stats_table(const NetworkStats& stats, std::optional<double> homophily) {
    std::ostringstream out;
    auto row = [&out](const std::string& name, const std::string& value) {
        out << name;
        for (std::size_t i = name.size(); i < 30; ++i) out << ' ';
        out << value << '\n';
    };
    auto num = [](double x, int prec) {
        std::ostringstream s;
        s.setf(std::ios::fixed);
        s.precision(prec);
        s << x;
        return s.str();
    };
    row("Number of nodes", std::to_string(stats.node_count));
    row("Number of isolated nodes", std::to_string(stats.isolated_count));
    row("Edge count", std::to_string(stats.edge_count));
    row("Avg. clustering coefficient", num(stats.avg_clustering_coefficient, 3));
    row("Avg. degree", num(stats.avg_degree, 3));
    row("Diameter", std::to_string(stats.diameter));
    row("Avg. path length", num(stats.avg_path_length, 3));
    row("Size of giant component", num(100.0 * stats.giant_component_fraction, 2) + "%");
    row("Homophily ratio", homophily ? num(*homophily, 2) : "Not calculated");
    return out.str();
}

std::string stats_json(const NetworkStats& stats, std::optional<double> homophily) {
    nlohmann::json j{{"node_count", stats.node_count},
                     {"isolated_count", stats.isolated_count},
                     {"edge_count", stats.edge_count},
                     {"avg_degree", stats.avg_degree},
                     {"avg_clustering_coefficient", stats.avg_clustering_coefficient},
                     {"diameter", stats.diameter},
                     {"avg_path_length", stats.avg_path_length},
                     {"giant_component_fraction", stats.giant_component_fraction}};
    if (homophily)
        j["homophily_ratio"] = *homophily;
    return j.dump(2);
}

}  // namespace commdet
