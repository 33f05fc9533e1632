#include "commdet/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace commdet {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

bool skip_line(const std::string& line) { return line.empty() || line[0] == '#'; }

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

[[noreturn]] void line_error(int line_no, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

}  // namespace

RatingsTable load_ratings(std::istream& in, std::vector<std::string>* warnings) {
    (void)warnings;
    RatingsTable table;
    std::map<std::pair<std::string, std::string>, std::size_t> seen;  // (user,item) -> record idx
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_cr(std::move(raw));
        if (skip_line(line)) continue;
        std::vector<std::string> fields = split_tabs(line);
        if (fields.size() != 3)
            line_error(line_no, "expected user<TAB>item<TAB>rating, got " +
                                    std::to_string(fields.size()) + " fields");
        if (fields[0].empty() || fields[1].empty())
            line_error(line_no, "empty user or item label");
        int rating = 0;
        const char* first = fields[2].data();
        const char* last = first + fields[2].size();
        auto [ptr, ec] = std::from_chars(first, last, rating);
        if (ec != std::errc() || ptr != last)
            line_error(line_no, "rating is not an integer: '" + fields[2] + "'");
        if (rating < 1 || rating > 5)
            line_error(line_no, "rating " + std::to_string(rating) + " outside 1..5");

        auto key = std::make_pair(fields[0], fields[1]);
        auto it = seen.find(key);
        if (it != seen.end()) {
            table.records[it->second].rating = rating;  // last write wins
        } else {
            seen.emplace(std::move(key), table.records.size());
            table.records.push_back({fields[0], fields[1], rating});
        }
    }
    for (const RatingRecord& rec : table.records) {
        ++table.item_rating_counts[rec.item];
        ++table.user_rating_counts[rec.user];
    }
    return table;
}

RatingsTable load_ratings_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in = open_or_throw(path);
    try {
        return load_ratings(in, warnings);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

FollowTable load_follows(std::istream& in, std::vector<std::string>* warnings) {
    FollowTable table;
    std::set<std::pair<std::string, std::string>> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_cr(std::move(raw));
        if (skip_line(line)) continue;
        std::vector<std::string> fields = split_tabs(line);
        if (fields.size() != 2)
            line_error(line_no, "expected follower<TAB>followee, got " +
                                    std::to_string(fields.size()) + " fields");
        if (fields[0].empty() || fields[1].empty())
            line_error(line_no, "empty user label");
        if (fields[0] == fields[1]) {
            if (warnings)
                warnings->push_back("line " + std::to_string(line_no) +
                                    ": dropped self-follow of '" + fields[0] + "'");
            continue;
        }
        if (!seen.emplace(fields[0], fields[1]).second) continue;
        table.records.push_back({fields[0], fields[1]});
    }
    for (const FollowRecord& rec : table.records) ++table.follower_counts[rec.followee];
    return table;
}

FollowTable load_follows_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in = open_or_throw(path);
    try {
        return load_follows(in, warnings);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

Graph mutual_friend_graph(const FollowTable& f) {
    GraphBuilder builder;
    std::set<std::pair<std::string, std::string>> directed;
    for (const FollowRecord& rec : f.records) {
        builder.add_node(rec.follower);
        builder.add_node(rec.followee);
        directed.emplace(rec.follower, rec.followee);
    }
    for (const FollowRecord& rec : f.records)
        if (rec.follower < rec.followee && directed.count({rec.followee, rec.follower}))
            builder.add_edge(rec.follower, rec.followee);
    return builder.build();
}

RatingsTable movie_filter(const RatingsTable& r, std::int64_t max_popularity) {
    if (max_popularity < 1)
        throw std::invalid_argument("movie filter: popularity threshold must be >= 1");
    RatingsTable out;
    for (const RatingRecord& rec : r.records)
        if (r.item_rating_counts.at(rec.item) < max_popularity) out.records.push_back(rec);
    for (const RatingRecord& rec : out.records) {
        ++out.item_rating_counts[rec.item];
        ++out.user_rating_counts[rec.user];
    }
    return out;
}

std::vector<int> user_filter(const RatingsTable& r, const Graph& g, std::int64_t min_ratings,
                             std::int64_t min_friends) {
    std::vector<int> keep;
    for (int v = 0; v < g.node_count(); ++v) {
        auto it = r.user_rating_counts.find(g.label(v));
        std::int64_t ratings = it == r.user_rating_counts.end() ? 0 : it->second;
        if (ratings >= min_ratings && g.degree(v) >= min_friends) keep.push_back(v);
    }
    return keep;
}

CelebritySplit celebrity_split(const FollowTable& f, std::int64_t celeb_threshold,
                               std::int64_t min_noncelebrity_friends) {
    if (celeb_threshold < 1 || min_noncelebrity_friends < 1)
        throw std::invalid_argument("celebrity split: thresholds must be >= 1");
    Graph g = mutual_friend_graph(f);
    std::vector<char> is_celebrity(g.node_count(), 0);
    CelebritySplit split;
    for (int v = 0; v < g.node_count(); ++v) {
        auto it = f.follower_counts.find(g.label(v));
        std::int64_t followers = it == f.follower_counts.end() ? 0 : it->second;
        if (followers > celeb_threshold) {
            is_celebrity[v] = 1;
            split.celebrities.push_back(g.label(v));
        }
    }
    for (int v = 0; v < g.node_count(); ++v) {
        if (is_celebrity[v]) continue;
        std::int64_t friends = 0;
        for (int u : g.neighbors(v))
            if (!is_celebrity[u]) ++friends;
        if (friends >= min_noncelebrity_friends) split.kept.push_back(g.label(v));
    }
    std::sort(split.celebrities.begin(), split.celebrities.end());
    std::sort(split.kept.begin(), split.kept.end());
    return split;
}

std::vector<std::string> item_index(const RatingsTable& r) {
    std::vector<std::string> items;
    items.reserve(r.item_rating_counts.size());
    for (const auto& [item, count] : r.item_rating_counts) items.push_back(item);
    return items;  // map iteration is already sorted
}

namespace {

BehavioralMatrix build_from_ratings(const RatingsTable& r, const std::vector<std::string>& items,
                                    const std::vector<std::string>& users, VectorKind kind,
                                    std::vector<std::string>* warnings) {
    std::map<std::string, int> item_pos;
    for (int i = 0; i < static_cast<int>(items.size()); ++i) item_pos[items[i]] = i;
    std::map<std::string, std::vector<std::pair<int, int>>> by_user;  // user -> (item pos, rating)
    for (const RatingRecord& rec : r.records) {
        auto it = item_pos.find(rec.item);
        if (it == item_pos.end())
            throw std::invalid_argument("vector build: item '" + rec.item +
                                        "' is not in the index");
        by_user[rec.user].emplace_back(it->second, rec.rating);
    }

    BehavioralMatrix b(static_cast<int>(users.size()), static_cast<int>(items.size()), kind);
    for (int u = 0; u < static_cast<int>(users.size()); ++u) {
        auto it = by_user.find(users[u]);
        if (it == by_user.end()) {
            if (warnings)
                warnings->push_back("user '" + users[u] + "' has no ratings; zero vector");
            continue;
        }
        for (const auto& [pos, rating] : it->second)
            b.set(u, pos, kind == VectorKind::rating ? static_cast<double>(rating) : 1.0);
    }
    return b;
}

}  // namespace

BehavioralMatrix build_rating_vectors(const RatingsTable& r, const std::vector<std::string>& items,
                                      const std::vector<std::string>& users,
                                      std::vector<std::string>* warnings) {
    return build_from_ratings(r, items, users, VectorKind::rating, warnings);
}

BehavioralMatrix build_interest_vectors(const RatingsTable& r,
                                        const std::vector<std::string>& items,
                                        const std::vector<std::string>& users,
                                        std::vector<std::string>* warnings) {
    return build_from_ratings(r, items, users, VectorKind::interest, warnings);
}

BehavioralMatrix build_celebrity_vectors(const FollowTable& f,
                                         const std::vector<std::string>& celebrities,
                                         const std::vector<std::string>& users,
                                         std::vector<std::string>* warnings) {
    std::map<std::string, int> celeb_pos;
    for (int i = 0; i < static_cast<int>(celebrities.size()); ++i) celeb_pos[celebrities[i]] = i;
    std::set<std::pair<std::string, std::string>> directed;
    for (const FollowRecord& rec : f.records) directed.emplace(rec.follower, rec.followee);

    BehavioralMatrix b(static_cast<int>(users.size()), static_cast<int>(celebrities.size()),
                       VectorKind::celebrity);
    for (int u = 0; u < static_cast<int>(users.size()); ++u) {
        bool any = false;
        for (const auto& [celeb, pos] : celeb_pos)
            if (directed.count({users[u], celeb})) {
                b.set(u, pos, 1.0);
                any = true;
            }
        if (!any && warnings)
            warnings->push_back("user '" + users[u] + "' follows no celebrity; zero vector");
    }
    return b;
}

// ---- Synthetic fixtures ----

Graph planted_partition_graph(int n, int blocks, double p_in, double p_out, Rng& rng) {
    if (n < 1 || blocks < 1 || blocks > n)
        throw std::invalid_argument("planted partition: need 1 <= blocks <= n");
    std::vector<std::string> labels(n);
    for (int v = 0; v < n; ++v) labels[v] = "u" + std::to_string(v);
    std::vector<int> block(n);
    for (int v = 0; v < n; ++v)
        block[v] = static_cast<int>(static_cast<std::int64_t>(v) * blocks / n);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double p = block[u] == block[v] ? p_in : p_out;
            if (rng.uniform() < p) edges.emplace_back(u, v);
        }
    return Graph::build(n, edges, std::move(labels));
}

DisagreementFixture disagreement_fixture(std::uint64_t seed) {
    // Three strong structural blocks; the behavioral groups coincide with the
    // blocks except for a fixed slice of each, whose taste defects to the next
    // group. Item support is disjoint across groups, so the two signals
    // disagree outright on the defectors while staying correlated overall.
    constexpr int kNodes = 60;
    constexpr int kGroups = 3;
    constexpr int kBlockSize = kNodes / kGroups;
    constexpr int kDefectorsPerBlock = 2;
    constexpr int kItemsPerGroup = 25;
    constexpr double kPIn = 0.35;
    constexpr double kPOut = 0.05;

    Rng rng(seed);
    DisagreementFixture fx;
    fx.graph = planted_partition_graph(kNodes, kGroups, kPIn, kPOut, rng);
    fx.structural_block.resize(kNodes);
    for (int v = 0; v < kNodes; ++v) fx.structural_block[v] = v / kBlockSize;
    fx.behavioral_group = fx.structural_block;
    for (int b = 0; b < kGroups; ++b)
        for (int i = 0; i < kDefectorsPerBlock; ++i)
            fx.behavioral_group[b * kBlockSize + i] = (b + 1) % kGroups;

    BehavioralMatrix b(kNodes, kGroups * kItemsPerGroup, VectorKind::rating);
    for (int v = 0; v < kNodes; ++v) {
        int base = fx.behavioral_group[v] * kItemsPerGroup;
        int count = 8 + rng.uniform_int(0, 7);
        for (int item : rng.sample(kItemsPerGroup, count))
            b.set(v, base + item, static_cast<double>(1 + rng.uniform_int(0, 4)));
    }
    fx.sims = similarity_matrix(b);
    fx.vectors = std::move(b);
    return fx;
}

BehavioralMatrix interest_view(const BehavioralMatrix& ratings) {
    BehavioralMatrix out(ratings.node_count(), ratings.dimension(), VectorKind::interest);
    for (int v = 0; v < ratings.node_count(); ++v)
        for (const auto& [idx, value] : ratings.row(v).entries)
            if (value > 0) out.set(v, idx, 1.0);
    return out;
}

namespace {

std::ofstream create_in(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::string path = dir + "/" + name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

}  // namespace

void write_filmtipset_fixture(const std::string& dir, int users, int items, int groups,
                              Rng& rng) {
    if (users < groups || items < groups + 3 || groups < 1)
        throw std::invalid_argument("filmtipset fixture: need users >= groups, items >= groups+3");
    auto user_label = [](int u) { return "u" + std::to_string(u); };
    auto item_label = [](int i) { return "m" + std::to_string(i); };
    std::vector<int> group(users);
    for (int u = 0; u < users; ++u) group[u] = u % groups;

    std::ofstream follows = create_in(dir, "follows.tsv");
    follows << "# follower\tfollowee\n";
    for (int u = 0; u < users; ++u)
        for (int v = u + 1; v < users; ++v) {
            double p = group[u] == group[v] ? 0.3 : 0.02;
            if (rng.uniform() < p)
                follows << user_label(u) << '\t' << user_label(v) << '\n'
                        << user_label(v) << '\t' << user_label(u) << '\n';
            else if (rng.uniform() < 0.04)  // some one-directional follows
                follows << user_label(u) << '\t' << user_label(v) << '\n';
        }

    // First 3 items are blockbusters rated by everyone (movie_filter fodder);
    // the rest are split into group-affine blocks.
    std::ofstream ratings = create_in(dir, "ratings.tsv");
    ratings << "# user\titem\trating\n";
    int per_group = (items - 3) / groups;
    for (int u = 0; u < users; ++u) {
        for (int i = 0; i < 3; ++i)
            ratings << user_label(u) << '\t' << item_label(i) << '\t' << 1 + rng.uniform_int(0, 4)
                    << '\n';
        int base = 3 + group[u] * per_group;
        int count = std::min(per_group, 5 + rng.uniform_int(0, 7));
        for (int pick : rng.sample(per_group, count))
            ratings << user_label(u) << '\t' << item_label(base + pick) << '\t'
                    << 1 + rng.uniform_int(0, 4) << '\n';
    }
}

void write_twitter_fixture(const std::string& dir, int users, int celebrities, Rng& rng) {
    if (users < 3 || celebrities < 1)
        throw std::invalid_argument("twitter fixture: need users >= 3, celebrities >= 1");
    auto user_label = [](int u) { return "u" + std::to_string(u); };
    auto celeb_label = [](int c) { return "celeb" + std::to_string(c); };
    constexpr int kGroups = 3;
    std::vector<int> group(users);
    for (int u = 0; u < users; ++u) group[u] = u % kGroups;

    std::ofstream follows = create_in(dir, "follows.tsv");
    follows << "# follower\tfollowee\n";
    for (int u = 0; u < users; ++u)
        for (int v = u + 1; v < users; ++v) {
            double p = group[u] == group[v] ? 0.3 : 0.03;
            if (rng.uniform() < p)
                follows << user_label(u) << '\t' << user_label(v) << '\n'
                        << user_label(v) << '\t' << user_label(u) << '\n';
        }
    for (int u = 0; u < users; ++u)
        for (int c = 0; c < celebrities; ++c) {
            double p = c % kGroups == group[u] ? 0.7 : 0.05;
            if (rng.uniform() < p) follows << user_label(u) << '\t' << celeb_label(c) << '\n';
        }
}

void write_planted_fixture(const std::string& dir, std::uint64_t seed) {
    DisagreementFixture fx = disagreement_fixture(seed);
    {
        std::ofstream edges = create_in(dir, "edges.txt");
        write_edge_list(fx.graph, edges);
    }
    {
        std::ofstream out = create_in(dir, "vectors_rating.txt");
        write_vectors(fx.vectors, fx.graph.labels(), out);
    }
    {
        std::ofstream out = create_in(dir, "vectors_interest.txt");
        write_vectors(interest_view(fx.vectors), fx.graph.labels(), out);
    }
}

}  // namespace commdet
