#include "commdet/hier_cluster.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <vector>

namespace commdet {

const char* to_string(Linkage l) {
    switch (l) {
        case Linkage::single: return "single";
        case Linkage::average: return "average";
        case Linkage::complete: return "complete";
    }
    return "?";
}

std::optional<Linkage> linkage_from_string(const std::string& name) {
    if (name == "single") return Linkage::single;
    if (name == "average") return Linkage::average;
    if (name == "complete") return Linkage::complete;
    return std::nullopt;
}

double linkage_score(const SimMatrix& s, std::span<const int> a, std::span<const int> b,
                     Linkage linkage) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("linkage score: empty community");
    for (int u : a)
        for (int v : b)
            if (u == v) throw std::invalid_argument("linkage score: overlapping communities");
    double best = 0.0;
    long double sum = 0.0L;
    bool first = true;
    for (int u : a) {
        for (int v : b) {
            double x = s(u, v);
            switch (linkage) {
                case Linkage::single: best = first ? x : std::min(best, x); break;
                case Linkage::complete: best = first ? x : std::max(best, x); break;
                case Linkage::average: sum += x; break;
            }
            first = false;
        }
    }
    if (linkage == Linkage::average)
        return static_cast<double>(sum / (static_cast<long double>(a.size()) * b.size()));
    return best;
}

namespace detail {

// Shared agglomeration driver. Communities are indexed by their smallest
// contained node; the pair payload is the linkage value itself for
// single/complete and the inter-community similarity sum for average/lmm.
class MergeEngine {
public:
    enum class Mode { single, average, complete, lmm };

    MergeEngine(const SimMatrix& s, Mode mode)
        : mode_(mode), n_(s.size()), sizes_(n_, 1), active_(n_, true) {
        std::size_t pairs = static_cast<std::size_t>(n_) * (n_ - 1) / 2;
        payload_.resize(pairs);
        version_.assign(pairs, 0);
        for (int u = 0; u < n_; ++u) {
            for (int v = u + 1; v < n_; ++v) {
                double x = s(u, v);
                ++sim_accesses_;
                payload_[index(u, v)] = x;
                heap_.push(Entry{score_of(u, v), u, v, 0});
            }
        }
        active_count_ = n_;
    }

    bool done() const { return active_count_ <= 1; }

    MergeStep merge_best() {
        if (done())
            throw std::logic_error("merge engine: single community left");
        Entry top{};
        for (;;) {
            top = heap_.top();
            heap_.pop();
            if (active_[top.a] && active_[top.b] && version_[index(top.a, top.b)] == top.version)
                break;
        }
        int a = top.a, b = top.b;  // a < b by construction
        MergeStep step{a, b, a, top.score};

        for (int k = 0; k < n_; ++k) {
            if (!active_[k] || k == a || k == b) continue;
            std::size_t ak = index(a, k), bk = index(b, k);
            switch (mode_) {
                case Mode::single: payload_[ak] = std::min(payload_[ak], payload_[bk]); break;
                case Mode::complete: payload_[ak] = std::max(payload_[ak], payload_[bk]); break;
                case Mode::average:
                case Mode::lmm: payload_[ak] += payload_[bk]; break;
            }
        }
        active_[b] = false;
        sizes_[a] += sizes_[b];
        --active_count_;
        for (int k = 0; k < n_; ++k) {
            if (!active_[k] || k == a) continue;
            std::size_t ak = index(a, k);
            std::uint32_t ver = ++version_[ak];
            heap_.push(Entry{score_of(std::min(a, k), std::max(a, k)), std::min(a, k),
                             std::max(a, k), ver});
        }
        return step;
    }

    std::vector<int> active_ids() const {
        std::vector<int> ids;
        for (int v = 0; v < n_; ++v)
            if (active_[v]) ids.push_back(v);
        return ids;
    }
    bool is_active(int id) const { return id >= 0 && id < n_ && active_[id]; }
    int community_size(int id) const { return sizes_[id]; }
    double payload(int a, int b) const { return payload_[index(a, b)]; }
    std::uint64_t sim_accesses() const { return sim_accesses_; }
    int node_count() const { return n_; }

    double score_of(int a, int b) const {
        double p = payload_[index(a, b)];
        double sa = sizes_[a], sb = sizes_[b];
        switch (mode_) {
            case Mode::single:
            case Mode::complete: return p;
            case Mode::average: return p / (sa * sb);
            case Mode::lmm: return 1.0 / std::max(sa, sb) + p / (sa * sb);
        }
        return 0.0;
    }

private:
    struct Entry {
        double score;
        int a, b;
        std::uint32_t version;
    };
    struct Worse {
        bool operator()(const Entry& x, const Entry& y) const {
            if (x.score != y.score) return x.score < y.score;
            if (x.a != y.a) return x.a > y.a;
            return x.b > y.b;
        }
    };

    std::size_t index(int a, int b) const {
        if (a > b) std::swap(a, b);
        return static_cast<std::size_t>(a) * n_ - static_cast<std::size_t>(a) * (a + 1) / 2 +
               (b - a - 1);
    }

    Mode mode_;
    int n_;
    int active_count_ = 0;
    std::vector<int> sizes_;
    std::vector<char> active_;
    std::vector<double> payload_;
    std::vector<std::uint32_t> version_;
    std::priority_queue<Entry, std::vector<Entry>, Worse> heap_;
    std::uint64_t sim_accesses_ = 0;
};

}  // namespace detail

namespace {

Dendrogram run_engine(detail::MergeEngine& engine) {
    Dendrogram d;
    d.leaf_count = engine.node_count();
    while (!engine.done()) d.steps.push_back(engine.merge_best());
    return d;
}

}  // namespace

Dendrogram agglomerate(const SimMatrix& s, Linkage linkage) {
    using Mode = detail::MergeEngine::Mode;
    Mode mode = linkage == Linkage::single    ? Mode::single
                : linkage == Linkage::average ? Mode::average
                                              : Mode::complete;
    detail::MergeEngine engine(s, mode);
    return run_engine(engine);
}

MergeState::MergeState(const SimMatrix& s)
    : engine_(std::make_unique<detail::MergeEngine>(s, detail::MergeEngine::Mode::lmm)) {}
MergeState::MergeState(MergeState&&) noexcept = default;
MergeState& MergeState::operator=(MergeState&&) noexcept = default;
MergeState::~MergeState() = default;

bool MergeState::done() const { return engine_->done(); }
MergeStep MergeState::merge_best() { return engine_->merge_best(); }
std::vector<int> MergeState::active_ids() const { return engine_->active_ids(); }
bool MergeState::is_active(int id) const { return engine_->is_active(id); }

int MergeState::community_size(int id) const {
    if (!engine_->is_active(id))
        throw std::invalid_argument("merge state: inactive community id");
    return engine_->community_size(id);
}

double MergeState::pair_sim_sum(int a, int b) const {
    if (!engine_->is_active(a) || !engine_->is_active(b) || a == b)
        throw std::invalid_argument("merge state: inactive community id");
    return engine_->payload(a, b);
}

std::uint64_t MergeState::sim_accesses() const { return engine_->sim_accesses(); }

double lmm_score(const MergeState& state, int a, int b) {
    double sum = state.pair_sim_sum(a, b);
    double sa = state.community_size(a), sb = state.community_size(b);
    return 1.0 / std::max(sa, sb) + sum / (sa * sb);
}

Dendrogram lmm_agglomerate(const SimMatrix& s, LmmStats* stats) {
    MergeState state(s);
    Dendrogram d;
    d.leaf_count = s.size();
    while (!state.done()) d.steps.push_back(state.merge_best());
    if (stats) stats->sim_accesses = state.sim_accesses();
    return d;
}

}  // namespace commdet
