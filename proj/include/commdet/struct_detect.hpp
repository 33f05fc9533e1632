#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "commdet/behavior.hpp"
#include "commdet/dendrogram.hpp"
#include "commdet/graph.hpp"
#include "commdet/metrics.hpp"

namespace commdet {

/// Betweenness score per edge: over every unordered node pair, each of its k
/// shortest paths contributes 1/k to the edges it crosses.
struct BetweennessTable {
    std::map<std::pair<int, int>, double> values;  // keyed by (min, max) endpoint

    /// Throws std::invalid_argument when (u, v) is not an edge of the graph.
    double at(int u, int v) const;
};

BetweennessTable edge_betweenness(const Graph& g);

/// One edge removal of a Girvan-Newman run.
struct RemovedEdge {
    int u = 0, v = 0;           // u < v
    double betweenness = 0.0;   // score when selected
    bool caused_split = false;  // removal disconnected its component
};

/// Divisive clustering: repeatedly remove the highest-betweenness edge (ties
/// broken by smallest endpoint pair) and recompute scores within the affected
/// component(s) only. Every split is recorded; the reversed split sequence is
/// returned as a Dendrogram whose step scores are the removed-edge
/// betweenness values, cuttable for k from the initial component count up to
/// the node count. `removals` (optional) receives the full removal order.
Dendrogram girvan_newman(const Graph& g, std::vector<RemovedEdge>* removals = nullptr);

struct LouvainOptions {
    ModularityVariant variant = ModularityVariant::newman;
    /// Repeat local moving on the community-aggregated graph until no level
    /// improves. Off by default; supported for the newman variant only.
    bool aggregate = false;
};

struct LouvainResult {
    Partition partition;
    double modularity = 0.0;               // on the input graph, under the variant used
    std::vector<double> modularity_trace;  // after each completed sweep, same graph/variant
    int sweeps = 0;                        // total sweeps across all levels
    int levels = 1;                        // > 1 only when aggregation ran further passes
};

/// Local-moving modularity maximization: sweep nodes in ascending id order,
/// apply the strictly-positive maximum-gain move (ties broken by smallest
/// target community id), stop when a full sweep moves nothing.
/// Throws std::invalid_argument on an edgeless graph.
LouvainResult louvain(const Graph& g, const LouvainOptions& opts = {});

struct InjectedEdge {
    int u = 0, v = 0;         // u < v
    double similarity = 0.0;
    double threshold = 0.0;   // like-mindedness in force when the pair was added
};

struct ModifiedLouvainOptions {
    ModularityVariant variant = ModularityVariant::newman;
    /// Recount community counters and like-mindedness from scratch after every
    /// applied move and fail loudly on drift. For tests on small inputs.
    bool self_check = false;
};

struct ModifiedLouvainResult {
    Partition partition;
    double like_mindedness = 0.0;
    /// Scores of the final partition on the input graph...
    double modularity_original_newman = 0.0;
    double modularity_original_literal = 0.0;
    /// ...and on the augmented working graph.
    double modularity_working_newman = 0.0;
    double modularity_working_literal = 0.0;
    std::vector<InjectedEdge> injected;             // in injection order
    std::vector<std::int64_t> injected_per_sweep;   // cumulative count after each sweep
    std::vector<double> modularity_trace;           // on the working graph, per sweep
    Graph working_graph;                            // input edges plus injections
    int sweeps = 0;
};

/// Louvain over a working copy of the graph that grows as communities form:
/// after every applied move, all absent node pairs whose similarity reaches
/// the current like-mindedness (and is positive) are added as edges, consumed
/// from a descending-similarity list so each pair is examined once. Gains are
/// measured on the working copy; final modularity is reported on both graphs.
/// Throws std::invalid_argument on an edgeless graph or a size-mismatched
/// similarity matrix.
ModifiedLouvainResult modified_louvain(const Graph& g, const SimMatrix& s,
                                       const ModifiedLouvainOptions& opts = {});

/// {"algorithm", "k", "communities"}: member labels sorted within each
/// community, communities ordered by smallest member label.
std::string partition_json(const std::string& algorithm, const Graph& g, const Partition& p);

}  // namespace commdet
