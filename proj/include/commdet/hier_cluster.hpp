#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "commdet/behavior.hpp"
#include "commdet/dendrogram.hpp"

namespace commdet {

/// Linkage criteria over similarities: single = min, average = mean,
/// complete = max. Agglomeration always merges the maximum-scoring pair.
enum class Linkage { single, average, complete };

const char* to_string(Linkage l);
std::optional<Linkage> linkage_from_string(const std::string& name);

/// The linkage formula evaluated verbatim over all cross pairs.
/// Throws std::invalid_argument on empty or overlapping sets.
double linkage_score(const SimMatrix& s, std::span<const int> a, std::span<const int> b,
                     Linkage linkage);

/// Full hierarchy: at each step the pair with the maximum linkage score is
/// merged, ties broken by the lexicographically smallest (id, id) pair.
Dendrogram agglomerate(const SimMatrix& s, Linkage linkage);

namespace detail {
class MergeEngine;
}

/// Like-mindedness-maximization merge state: active communities indexed by
/// their smallest node, inter-community similarity sums, and a lazy max-heap
/// of pair scores. Sums are maintained additively, so each node pair's
/// similarity is read exactly once per run.
class MergeState {
public:
    explicit MergeState(const SimMatrix& s);
    MergeState(MergeState&&) noexcept;
    MergeState& operator=(MergeState&&) noexcept;
    ~MergeState();

    bool done() const;
    /// Merge the highest-scoring active pair and return the step taken.
    MergeStep merge_best();

    std::vector<int> active_ids() const;
    bool is_active(int id) const;
    int community_size(int id) const;
    /// Sum of sim(u, v) over inter-community pairs of two active communities.
    double pair_sim_sum(int a, int b) const;
    std::uint64_t sim_accesses() const;

private:
    std::unique_ptr<detail::MergeEngine> engine_;
};

/// S(A, B) = 1/max(|A|, |B|) + pair_sim_sum(A, B) / (|A| * |B|).
/// Throws std::invalid_argument on an inactive community id.
double lmm_score(const MergeState& state, int a, int b);

struct LmmStats {
    std::uint64_t sim_accesses = 0;
};

/// Repeatedly merges the globally highest-S pair; ties broken by the
/// lexicographically smallest (id, id) pair.
Dendrogram lmm_agglomerate(const SimMatrix& s, LmmStats* stats = nullptr);

}  // namespace commdet
