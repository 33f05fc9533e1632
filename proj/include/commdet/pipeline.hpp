#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "commdet/behavior.hpp"
#include "commdet/graph.hpp"
#include "commdet/rng.hpp"

namespace commdet {

struct RatingRecord {
    std::string user, item;
    int rating = 0;

    bool operator==(const RatingRecord&) const = default;
};

/// Deduplicated ratings log: one record per (user, item) in first-appearance
/// order; on duplicates the last written rating wins.
struct RatingsTable {
    std::vector<RatingRecord> records;
    std::map<std::string, std::int64_t> item_rating_counts;
    std::map<std::string, std::int64_t> user_rating_counts;
};

struct FollowRecord {
    std::string follower, followee;

    bool operator==(const FollowRecord&) const = default;
};

/// Deduplicated directed follows; self-follows are dropped at load time.
struct FollowTable {
    std::vector<FollowRecord> records;
    std::map<std::string, std::int64_t> follower_counts;  // user -> how many follow them
};

/// TSV loaders (`user<TAB>item<TAB>rating` / `follower<TAB>followee`, `#`
/// comments). Malformed lines — wrong field count, non-integer rating, rating
/// outside 1..5 — raise std::runtime_error naming the line; self-follows are
/// dropped with a note in `warnings` when provided.
RatingsTable load_ratings(std::istream& in, std::vector<std::string>* warnings = nullptr);
RatingsTable load_ratings_file(const std::string& path,
                               std::vector<std::string>* warnings = nullptr);
FollowTable load_follows(std::istream& in, std::vector<std::string>* warnings = nullptr);
FollowTable load_follows_file(const std::string& path,
                              std::vector<std::string>* warnings = nullptr);

/// Undirected edge (u, v) iff both directed follows exist. Nodes are all
/// users appearing in the table, in first-appearance order.
Graph mutual_friend_graph(const FollowTable& f);

/// Drop every item rated at least `max_popularity` times, then recompute all
/// counts. Throws std::invalid_argument when max_popularity < 1.
RatingsTable movie_filter(const RatingsTable& r, std::int64_t max_popularity);

/// Ascending node ids of g whose users rate at least `min_ratings` items and
/// have at least `min_friends` neighbors. Run movie_filter first: these
/// counts must be post-filter. Users absent from g cannot be selected.
std::vector<int> user_filter(const RatingsTable& r, const Graph& g, std::int64_t min_ratings,
                             std::int64_t min_friends);

struct CelebritySplit {
    std::vector<std::string> celebrities;  // follower count strictly above the threshold
    std::vector<std::string> kept;         // non-celebrities with enough non-celebrity friends
};

/// Celebrities have follower_count > celeb_threshold (strict); kept users are
/// non-celebrities with at least `min_noncelebrity_friends` mutual friends
/// among non-celebrities. Both lists sorted. Thresholds must be >= 1.
CelebritySplit celebrity_split(const FollowTable& f, std::int64_t celeb_threshold,
                               std::int64_t min_noncelebrity_friends);

/// Sorted unique item labels — the canonical vector dimension order.
std::vector<std::string> item_index(const RatingsTable& r);

/// Per-user vectors in `users` order, one dimension per entry of the index.
/// R_u holds the rating (0 when unrated), S_u the 0/1 rated indicator, F_u
/// the 0/1 celebrity-follow indicator. A user absent from the table gets a
/// zero vector plus a note in `warnings`; a record naming an item outside the
/// index throws std::invalid_argument.
BehavioralMatrix build_rating_vectors(const RatingsTable& r, const std::vector<std::string>& items,
                                      const std::vector<std::string>& users,
                                      std::vector<std::string>* warnings = nullptr);
BehavioralMatrix build_interest_vectors(const RatingsTable& r,
                                        const std::vector<std::string>& items,
                                        const std::vector<std::string>& users,
                                        std::vector<std::string>* warnings = nullptr);
BehavioralMatrix build_celebrity_vectors(const FollowTable& f,
                                         const std::vector<std::string>& celebrities,
                                         const std::vector<std::string>& users,
                                         std::vector<std::string>* warnings = nullptr);

// ---- Synthetic fixtures ----

/// Planted-partition graph: `blocks` contiguous equal groups over n nodes,
/// edge probability p_in inside a group, p_out across. Labels "u0".."u<n-1>".
Graph planted_partition_graph(int n, int blocks, double p_in, double p_out, Rng& rng);

/// Fixture whose structural blocks and behavioral groups deliberately
/// disagree: two weak planted blocks wired by edges, three rating groups
/// interleaved across them with disjoint item support (so cross-group
/// similarity is exactly zero).
struct DisagreementFixture {
    Graph graph;
    BehavioralMatrix vectors;  // rating kind
    SimMatrix sims;
    std::vector<int> structural_block;
    std::vector<int> behavioral_group;
};
DisagreementFixture disagreement_fixture(std::uint64_t seed);

/// 0/1 interest view of a rating matrix (1 wherever a rating is present).
BehavioralMatrix interest_view(const BehavioralMatrix& ratings);

/// Dataset generators for the CLI: schema-identical miniature inputs.
/// filmtipset-style: ratings.tsv + follows.tsv with planted friend groups,
/// group-affine item tastes, and a few blockbusters rated by everyone.
/// twitter-style: follows.tsv with celebrity accounts and planted mutual
/// friend groups. planted: edges.txt + vectors_rating.txt +
/// vectors_interest.txt from disagreement_fixture.
void write_filmtipset_fixture(const std::string& dir, int users, int items, int groups, Rng& rng);
void write_twitter_fixture(const std::string& dir, int users, int celebrities, Rng& rng);
void write_planted_fixture(const std::string& dir, std::uint64_t seed);

}  // namespace commdet
