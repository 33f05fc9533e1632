#include "commdet/dendrogram.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace commdet {

Partition cut(const Dendrogram& d, int k) {
    if (k < d.min_cut() || k > d.leaf_count || k < 1)
        throw std::invalid_argument("dendrogram cut level out of range");
    std::vector<int> comm(d.leaf_count);
    for (int v = 0; v < d.leaf_count; ++v) comm[v] = v;
    int replay = d.leaf_count - k;
    for (int i = 0; i < replay; ++i) {
        const MergeStep& step = d.steps[i];
        for (int v = 0; v < d.leaf_count; ++v)
            if (comm[v] == step.b) comm[v] = step.merged;
    }
    return Partition::from_assignment(comm);
}

void write_dendrogram(const Dendrogram& d, std::ostream& out) {
    out << "#leaves " << d.leaf_count << '\n';
    out.precision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const MergeStep& s = d.steps[i];
        out << i + 1 << ' ' << s.a << ' ' << s.b << ' ' << s.merged << ' ' << s.score << '\n';
    }
}

}  // namespace commdet
