#pragma once

#include <cstdint>
#include <random>

namespace commdet {

/// Explicitly seeded generator whose draws bypass the standard distributions,
/// so sequences are identical across standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi]; modulo bias is irrelevant at fixture scale.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// First `take` elements of a Fisher-Yates pass over [0, pool).
    std::vector<int> sample(int pool, int take) {
        std::vector<int> idx(pool);
        for (int i = 0; i < pool; ++i) idx[i] = i;
        for (int i = 0; i < take && i < pool; ++i) {
            int j = uniform_int(i, pool - 1);
            std::swap(idx[i], idx[j]);
        }
        idx.resize(take < pool ? take : pool);
        return idx;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace commdet
