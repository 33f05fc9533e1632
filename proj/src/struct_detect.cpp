#include "commdet/struct_detect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace commdet {

namespace {

using Adj = std::vector<std::vector<int>>;

// Guard against a floating-point pathology keeping strictly-positive-gain
// sweeps alive forever; never reached on real inputs.
constexpr int kSweepCap = 10000;

Adj adjacency_of(const Graph& g) {
    Adj adj(g.node_count());
    for (int u = 0; u < g.node_count(); ++u) {
        auto nbrs = g.neighbors(u);
        adj[u].assign(nbrs.begin(), nbrs.end());
    }
    return adj;
}

std::vector<int> reachable_from(const Adj& adj, int start) {
    std::vector<char> seen(adj.size(), 0);
    std::vector<int> out{start};
    seen[start] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int v : adj[out[i]])
            if (!seen[v]) {
                seen[v] = 1;
                out.push_back(v);
            }
    std::sort(out.begin(), out.end());
    return out;
}

// Single-source shortest-path counting with dependency accumulation, run from
// every node of `nodes` (which must be a union of whole components of `adj`).
// Writes the score of every edge inside `nodes` into `out`, overwriting any
// previous value; per-source totals are halved so each unordered pair counts
// once.
void component_betweenness(const Adj& adj, const std::vector<int>& nodes,
                           std::map<std::pair<int, int>, double>& out) {
    const int n = static_cast<int>(adj.size());
    std::map<std::pair<int, int>, double> acc;
    for (int u : nodes)
        for (int v : adj[u])
            if (u < v) acc[{u, v}] = 0.0;

    std::vector<int> dist(n, -1);
    std::vector<double> sigma(n, 0.0), delta(n, 0.0);
    std::vector<std::vector<int>> preds(n);
    std::vector<int> order;
    order.reserve(nodes.size());

    for (int s : nodes) {
        order.clear();
        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            int u = order[head];
            for (int v : adj[u]) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    order.push_back(v);
                }
                if (dist[v] == dist[u] + 1) {
                    sigma[v] += sigma[u];
                    preds[v].push_back(u);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int v = *it;
            for (int u : preds[v]) {
                double c = sigma[u] / sigma[v] * (1.0 + delta[v]);
                acc[{std::min(u, v), std::max(u, v)}] += c;
                delta[u] += c;
            }
        }
        for (int v : order) {
            dist[v] = -1;
            sigma[v] = 0.0;
            delta[v] = 0.0;
            preds[v].clear();
        }
    }
    for (const auto& [edge, value] : acc) out[edge] = value * 0.5;
}

}  // namespace

double BetweennessTable::at(int u, int v) const {
    auto it = values.find({std::min(u, v), std::max(u, v)});
    if (it == values.end()) throw std::invalid_argument("betweenness table: not an edge");
    return it->second;
}

BetweennessTable edge_betweenness(const Graph& g) {
    Adj adj = adjacency_of(g);
    std::vector<int> all(g.node_count());
    std::iota(all.begin(), all.end(), 0);
    BetweennessTable table;
    component_betweenness(adj, all, table.values);
    return table;
}

Dendrogram girvan_newman(const Graph& g, std::vector<RemovedEdge>* removals) {
    const int n = g.node_count();
    Adj adj = adjacency_of(g);
    std::map<std::pair<int, int>, double> bet;
    {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        component_betweenness(adj, all, bet);
    }

    auto drop = [](std::vector<int>& vec, int value) {
        vec.erase(std::find(vec.begin(), vec.end(), value));
    };

    std::vector<MergeStep> splits;
    while (!bet.empty()) {
        auto best = bet.begin();
        for (auto it = std::next(bet.begin()); it != bet.end(); ++it)
            if (it->second > best->second) best = it;
        auto [u, v] = best->first;
        double score = best->second;
        bet.erase(best);
        drop(adj[u], v);
        drop(adj[v], u);

        std::vector<int> side_u = reachable_from(adj, u);
        bool split = !std::binary_search(side_u.begin(), side_u.end(), v);
        if (removals) removals->push_back({u, v, score, split});

        if (!split) {
            component_betweenness(adj, side_u, bet);
        } else {
            std::vector<int> side_v = reachable_from(adj, v);
            int a = std::min(side_u.front(), side_v.front());
            int b = std::max(side_u.front(), side_v.front());
            splits.push_back({a, b, a, score});
            if (side_u.size() > 1) component_betweenness(adj, side_u, bet);
            if (side_v.size() > 1) component_betweenness(adj, side_v, bet);
        }
    }

    Dendrogram d;
    d.leaf_count = n;
    d.steps.assign(splits.rbegin(), splits.rend());
    return d;
}

namespace {

// ---- Weighted graph for the optional aggregation passes ----

struct WGraph {
    std::vector<std::map<int, double>> w;  // off-diagonal weights, symmetric
    std::vector<double> self;              // diagonal (collapsed internal weight, doubled)
    std::vector<double> strength;          // row sums including the diagonal
    double total = 0.0;                    // sum of strengths == 2m

    int node_count() const { return static_cast<int>(w.size()); }

    void finalize() {
        strength.assign(node_count(), 0.0);
        total = 0.0;
        for (int u = 0; u < node_count(); ++u) {
            double k = self[u];
            for (const auto& [v, wt] : w[u]) k += wt;
            strength[u] = k;
            total += k;
        }
    }
};

WGraph weighted_of(const Graph& g) {
    WGraph wg;
    wg.w.resize(g.node_count());
    wg.self.assign(g.node_count(), 0.0);
    for (int u = 0; u < g.node_count(); ++u)
        for (int v : g.neighbors(u)) wg.w[u][v] = 1.0;
    wg.finalize();
    return wg;
}

WGraph aggregate_graph(const WGraph& wg, const std::vector<int>& comm, int k) {
    WGraph out;
    out.w.resize(k);
    out.self.assign(k, 0.0);
    for (int u = 0; u < wg.node_count(); ++u) out.self[comm[u]] += wg.self[u];
    for (int u = 0; u < wg.node_count(); ++u)
        for (const auto& [v, wt] : wg.w[u]) {
            if (u >= v) continue;
            int cu = comm[u], cv = comm[v];
            if (cu == cv) {
                out.self[cu] += 2.0 * wt;
            } else {
                out.w[cu][cv] += wt;
                out.w[cv][cu] += wt;
            }
        }
    out.finalize();
    return out;
}

// Ascending sweeps of strictly-positive best moves under the newman measure;
// `on_sweep` sees the raw assignment after every completed sweep.
bool weighted_local_moving(const WGraph& wg, std::vector<int>& assign, int& sweeps,
                           const std::function<void(const std::vector<int>&)>& on_sweep) {
    const int n = wg.node_count();
    assign.resize(n);
    std::iota(assign.begin(), assign.end(), 0);
    std::vector<double> degree_sum = wg.strength;
    const double m = wg.total / 2.0;
    bool any_move = false;
    for (;;) {
        bool moved = false;
        for (int x = 0; x < n; ++x) {
            int from = assign[x];
            std::map<int, double> links;
            for (const auto& [y, wt] : wg.w[x]) links[assign[y]] += wt;
            double w_own = 0.0;
            if (auto it = links.find(from); it != links.end()) w_own = it->second;
            const double kx = wg.strength[x];
            int best_comm = -1;
            double best_gain = 0.0;
            for (const auto& [c, w_c] : links) {
                if (c == from) continue;
                double gain = (w_c - w_own) / m -
                              kx * (degree_sum[c] - degree_sum[from] + kx) / (2.0 * m * m);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            if (best_comm >= 0) {
                degree_sum[from] -= kx;
                degree_sum[best_comm] += kx;
                assign[x] = best_comm;
                moved = true;
                any_move = true;
            }
        }
        ++sweeps;
        on_sweep(assign);
        if (!moved) break;
        if (sweeps > kSweepCap) throw std::logic_error("louvain failed to converge");
    }
    return any_move;
}

LouvainResult louvain_aggregated(const Graph& g) {
    const int n = g.node_count();
    LouvainResult res;
    res.levels = 0;
    WGraph wg = weighted_of(g);
    std::vector<int> flat(n);
    std::iota(flat.begin(), flat.end(), 0);

    for (;;) {
        ++res.levels;
        std::vector<int> assign;
        bool any = weighted_local_moving(wg, assign, res.sweeps, [&](const std::vector<int>& a) {
            std::vector<int> composed(n);
            for (int v = 0; v < n; ++v) composed[v] = a[flat[v]];
            res.modularity_trace.push_back(
                modularity(g, Partition::from_assignment(composed), ModularityVariant::newman));
        });
        Partition canon = Partition::from_assignment(assign);
        for (int v = 0; v < n; ++v) flat[v] = canon.assignment[flat[v]];
        if (!any || canon.community_count() == wg.node_count()) break;
        wg = aggregate_graph(wg, canon.assignment, canon.community_count());
    }

    res.partition = Partition::from_assignment(flat);
    res.modularity = modularity(g, res.partition, ModularityVariant::newman);
    return res;
}

}  // namespace

LouvainResult louvain(const Graph& g, const LouvainOptions& opts) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("louvain requires a graph with at least one edge");
    if (opts.aggregate) {
        if (opts.variant != ModularityVariant::newman)
            throw std::invalid_argument("aggregated louvain supports the newman variant only");
        return louvain_aggregated(g);
    }

    const int n = g.node_count();
    PartitionStats stats = partition_stats(g, Partition::singletons(n));
    LouvainResult res;
    for (;;) {
        bool moved = false;
        for (int x = 0; x < n; ++x) {
            int from = stats.assignment[x];
            std::map<int, int> links;
            for (int y : g.neighbors(x)) ++links[stats.assignment[y]];
            int k_own = 0;
            if (auto it = links.find(from); it != links.end()) k_own = it->second;
            int best_comm = -1;
            double best_gain = 0.0;
            for (const auto& [c, k_c] : links) {
                if (c == from) continue;
                double gain =
                    move_gain(stats.total_edges, g.degree(x), k_own, k_c, stats.degree_sums[from],
                              stats.degree_sums[c], stats.internal_edges[from],
                              stats.internal_edges[c], opts.variant);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            if (best_comm >= 0) {
                apply_move(stats, g, x, best_comm);
                moved = true;
            }
        }
        ++res.sweeps;
        res.modularity_trace.push_back(modularity(stats, opts.variant));
        if (!moved) break;
        if (res.sweeps > kSweepCap) throw std::logic_error("louvain failed to converge");
    }
    res.partition = Partition::from_assignment(stats.assignment);
    res.modularity = modularity(g, res.partition, opts.variant);
    return res;
}

namespace {

struct MlState {
    Adj adj;
    std::vector<std::int64_t> internal, degree_sum;  // per community id 0..n-1
    std::int64_t edges = 0;
    std::vector<int> assign;
    std::vector<std::vector<int>> members;
    std::vector<int> pos;  // node -> index within its community's member list
    long double intra_sum = 0.0L;
    std::int64_t intra_pairs = 0;

    double like_mindedness() const {
        return intra_pairs > 0 ? static_cast<double>(intra_sum / intra_pairs) : 0.0;
    }
};

void ml_self_check(const MlState& st, const SimMatrix& s) {
    const int n = static_cast<int>(st.adj.size());
    std::vector<std::int64_t> internal(n, 0), degree_sum(n, 0);
    std::int64_t edges = 0;
    for (int u = 0; u < n; ++u) {
        int cu = st.assign[u];
        degree_sum[cu] += static_cast<std::int64_t>(st.adj[u].size());
        for (int v : st.adj[u]) {
            if (u < v) {
                ++edges;
                if (st.assign[v] == cu) ++internal[cu];
            }
        }
    }
    if (internal != st.internal || degree_sum != st.degree_sum || edges != st.edges)
        throw std::logic_error("modified louvain: working-graph counters drifted");

    long double sum = 0.0L;
    std::int64_t pairs = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (st.assign[u] == st.assign[v]) {
                sum += s(u, v);
                ++pairs;
            }
    if (pairs != st.intra_pairs ||
        std::abs(static_cast<double>(sum - st.intra_sum)) > 1e-9 * (1.0 + std::abs(static_cast<double>(sum))))
        throw std::logic_error("modified louvain: like-mindedness accumulator drifted");
}

}  // namespace

ModifiedLouvainResult modified_louvain(const Graph& g, const SimMatrix& s,
                                       const ModifiedLouvainOptions& opts) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("modified louvain requires a graph with at least one edge");
    if (s.size() != g.node_count())
        throw std::invalid_argument("modified louvain: similarity matrix does not match the graph");

    const int n = g.node_count();
    MlState st;
    st.adj = adjacency_of(g);
    st.internal.assign(n, 0);
    st.degree_sum.resize(n);
    for (int v = 0; v < n; ++v) st.degree_sum[v] = g.degree(v);
    st.edges = g.edge_count();
    st.assign.resize(n);
    std::iota(st.assign.begin(), st.assign.end(), 0);
    st.members.resize(n);
    for (int v = 0; v < n; ++v) st.members[v] = {v};
    st.pos.assign(n, 0);

    // Candidate pairs, most similar first; pairs at zero similarity are never
    // informative and existing edges are already present.
    struct PairRec {
        double sim;
        int u, v;
    };
    std::vector<PairRec> sorted_pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double sim = s(u, v);
            if (sim > 0.0 && !g.has_edge(u, v)) sorted_pairs.push_back({sim, u, v});
        }
    std::sort(sorted_pairs.begin(), sorted_pairs.end(), [](const PairRec& a, const PairRec& b) {
        if (a.sim != b.sim) return a.sim > b.sim;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    std::size_t cursor = 0;

    ModifiedLouvainResult res;
    for (;;) {
        bool moved = false;
        for (int x = 0; x < n; ++x) {
            int from = st.assign[x];
            std::map<int, int> links;
            for (int y : st.adj[x]) ++links[st.assign[y]];
            int k_own = 0;
            if (auto it = links.find(from); it != links.end()) k_own = it->second;
            const std::int64_t k_x = static_cast<std::int64_t>(st.adj[x].size());
            int best_comm = -1;
            double best_gain = 0.0;
            for (const auto& [c, k_c] : links) {
                if (c == from) continue;
                double gain = move_gain(st.edges, k_x, k_own, k_c, st.degree_sum[from],
                                        st.degree_sum[c], st.internal[from], st.internal[c],
                                        opts.variant);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            if (best_comm < 0) continue;

            // Move x, updating counters, membership, and the like-mindedness
            // accumulator in O(|old community| + |new community|).
            int k_target = links[best_comm];
            st.internal[from] -= k_own;
            st.internal[best_comm] += k_target;
            st.degree_sum[from] -= k_x;
            st.degree_sum[best_comm] += k_x;
            st.assign[x] = best_comm;

            auto& old_members = st.members[from];
            int p = st.pos[x];
            old_members[p] = old_members.back();
            st.pos[old_members[p]] = p;
            old_members.pop_back();
            for (int y : old_members) st.intra_sum -= s(x, y);
            st.intra_pairs -= static_cast<std::int64_t>(old_members.size());

            auto& new_members = st.members[best_comm];
            for (int y : new_members) st.intra_sum += s(x, y);
            st.intra_pairs += static_cast<std::int64_t>(new_members.size());
            new_members.push_back(x);
            st.pos[x] = static_cast<int>(new_members.size()) - 1;

            double threshold = st.like_mindedness();
            while (cursor < sorted_pairs.size() && sorted_pairs[cursor].sim >= threshold) {
                const PairRec& pr = sorted_pairs[cursor];
                ++cursor;
                st.adj[pr.u].push_back(pr.v);
                st.adj[pr.v].push_back(pr.u);
                ++st.edges;
                int cu = st.assign[pr.u], cv = st.assign[pr.v];
                if (cu == cv) {
                    st.internal[cu] += 1;
                    st.degree_sum[cu] += 2;
                } else {
                    st.degree_sum[cu] += 1;
                    st.degree_sum[cv] += 1;
                }
                res.injected.push_back({pr.u, pr.v, pr.sim, threshold});
            }
            if (opts.self_check) ml_self_check(st, s);
            moved = true;
        }
        ++res.sweeps;
        res.injected_per_sweep.push_back(static_cast<std::int64_t>(res.injected.size()));
        {
            PartitionStats working;
            working.internal_edges = st.internal;
            working.degree_sums = st.degree_sum;
            working.assignment = st.assign;
            working.total_edges = st.edges;
            res.modularity_trace.push_back(modularity(working, opts.variant));
        }
        if (!moved) break;
        if (res.sweeps > kSweepCap)
            throw std::logic_error("modified louvain failed to converge");
    }

    res.partition = Partition::from_assignment(st.assign);
    res.like_mindedness = like_mindedness(s, res.partition);
    res.modularity_original_newman = modularity(g, res.partition, ModularityVariant::newman);
    res.modularity_original_literal =
        modularity(g, res.partition, ModularityVariant::paper_literal);

    std::vector<std::pair<int, int>> working_edges = g.edges();
    for (const InjectedEdge& e : res.injected) working_edges.emplace_back(e.u, e.v);
    res.working_graph = Graph::build(n, working_edges, g.labels());
    res.modularity_working_newman =
        modularity(res.working_graph, res.partition, ModularityVariant::newman);
    res.modularity_working_literal =
        modularity(res.working_graph, res.partition, ModularityVariant::paper_literal);
    return res;
}

std::string partition_json(const std::string& algorithm, const Graph& g, const Partition& p) {
    if (static_cast<int>(p.assignment.size()) != g.node_count())
        throw std::invalid_argument("partition json: partition does not cover the graph");
    std::vector<std::vector<std::string>> communities;
    communities.reserve(p.members.size());
    for (const auto& community : p.members) {
        std::vector<std::string> labels;
        labels.reserve(community.size());
        for (int v : community) labels.push_back(g.label(v));
        std::sort(labels.begin(), labels.end());
        communities.push_back(std::move(labels));
    }
    std::sort(communities.begin(), communities.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    nlohmann::json j;
    j["algorithm"] = algorithm;
    j["k"] = p.community_count();
    j["communities"] = communities;
    return j.dump(2);
}

}  // namespace commdet
