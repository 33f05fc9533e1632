#pragma once

#include <iosfwd>
#include <vector>

#include "commdet/graph.hpp"

namespace commdet {

/// One merge: communities `a` and `b` (a < b, both indexed by their smallest
/// contained node) become community `merged` == a. `score` is the criterion
/// value that selected the merge.
struct MergeStep {
    int a = 0;
    int b = 0;
    int merged = 0;
    double score = 0.0;

    bool operator==(const MergeStep&) const = default;
};

/// Ordered merge sequence from leaf_count singleton communities upward.
/// A complete agglomerative run has leaf_count - 1 steps; a divisive hierarchy
/// on a disconnected graph stops at its component count, so cutting is valid
/// for k in [min_cut(), leaf_count].
struct Dendrogram {
    int leaf_count = 0;
    std::vector<MergeStep> steps;

    int min_cut() const { return leaf_count - static_cast<int>(steps.size()); }
};

/// Replay the first leaf_count - k merges from singletons.
/// Throws std::invalid_argument when k is outside [min_cut, leaf_count].
Partition cut(const Dendrogram& d, int k);

/// Line-per-merge text format: `step a_id b_id merged_id score`.
void write_dendrogram(const Dendrogram& d, std::ostream& out);

}  // namespace commdet
