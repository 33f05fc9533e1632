#include "commdet/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracle_helpers.hpp"

using namespace commdet;

namespace {

RatingsTable ratings_from(const std::string& text, std::vector<std::string>* warnings = nullptr) {
    std::istringstream in(text);
    return load_ratings(in, warnings);
}

FollowTable follows_from(const std::string& text, std::vector<std::string>* warnings = nullptr) {
    std::istringstream in(text);
    return load_follows(in, warnings);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("ratings loader parses, validates and deduplicates") {
    RatingsTable t = ratings_from("u1\tm1\t3\nu2\tm1\t4\nu1\tm2\t5\n");
    CHECK(t.records.size() == 3);
    CHECK(t.item_rating_counts.at("m1") == 2);
    CHECK(t.user_rating_counts.at("u1") == 2);

    // out-of-range rating names its line
    std::istringstream bad("u1\tm1\t9\n");
    try {
        load_ratings(bad);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }

    std::istringstream bad2("u1\tm1\n");
    CHECK_THROWS_AS(load_ratings(bad2), std::runtime_error);
    std::istringstream bad3("u1\tm1\tthree\n");
    CHECK_THROWS_AS(load_ratings(bad3), std::runtime_error);

    // duplicates: last write wins, first-appearance order kept
    RatingsTable dup = ratings_from("u1\tm1\t3\nu1\tm2\t2\nu1\tm1\t5\n");
    REQUIRE(dup.records.size() == 2);
    CHECK(dup.records[0] == RatingRecord{"u1", "m1", 5});
    CHECK(dup.records[1] == RatingRecord{"u1", "m2", 2});
    CHECK(dup.item_rating_counts.at("m1") == 1);

    // comments and blank lines are skipped
    RatingsTable c = ratings_from("# header\n\nu1\tm1\t1\n");
    CHECK(c.records.size() == 1);
}

TEST_CASE("follows loader drops self-follows with a warning and dedupes") {
    std::vector<std::string> warnings;
    FollowTable f = follows_from("a\tb\nb\ta\na\ta\na\tb\n", &warnings);
    CHECK(f.records.size() == 2);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("self-follow") != std::string::npos);
    CHECK(f.follower_counts.at("a") == 1);
    CHECK(f.follower_counts.at("b") == 1);

    std::istringstream bad("a\n");
    CHECK_THROWS_AS(load_follows(bad), std::runtime_error);
}

TEST_CASE("mutual friendship requires both directions") {
    FollowTable f = follows_from("a\tb\nb\ta\nb\tc\n");
    Graph g = mutual_friend_graph(f);
    CHECK(g.node_count() == 3);  // c appears even though friendless
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(g.index_of("a"), g.index_of("b")));
    CHECK(g.degree(g.index_of("c")) == 0);

    Graph one = mutual_friend_graph(follows_from("a\tb\n"));
    CHECK(one.edge_count() == 0);
}

TEST_CASE("movie filter removes items at the popularity boundary") {
    std::ostringstream text;
    for (int i = 0; i < 50; ++i) text << 'u' << i << "\tpopular\t3\n";
    for (int i = 0; i < 49; ++i) text << 'u' << i << "\tniche\t4\n";
    RatingsTable t = ratings_from(text.str());

    RatingsTable filtered = movie_filter(t, 50);
    CHECK(filtered.item_rating_counts.count("popular") == 0);
    CHECK(filtered.item_rating_counts.at("niche") == 49);
    CHECK(filtered.user_rating_counts.at("u0") == 1);  // recomputed
    CHECK(filtered.user_rating_counts.count("u49") == 0);

    CHECK(movie_filter(t, 1).records.empty());
    CHECK_THROWS_AS(movie_filter(t, 0), std::invalid_argument);
}

TEST_CASE("user filter keeps active and social users only") {
    // u1 rates 5 items and has 5 friends; u2 rates 5 items but has 4 friends.
    std::ostringstream ratings;
    for (int i = 0; i < 5; ++i) {
        ratings << "u1\tm" << i << "\t3\n";
        ratings << "u2\tm" << i << "\t3\n";
    }
    RatingsTable r = ratings_from(ratings.str());

    GraphBuilder gb;
    for (int i = 0; i < 5; ++i) {
        gb.add_edge("u1", "f" + std::to_string(i));
        if (i < 4) gb.add_edge("u2", "f" + std::to_string(i));
    }
    Graph g = gb.build();

    std::vector<int> kept = user_filter(r, g, 5, 5);
    REQUIRE(kept.size() == 1);
    CHECK(g.label(kept[0]) == "u1");

    CHECK(user_filter(ratings_from("# none\n"), g, 1, 1).empty());

    // raising either threshold never grows the kept set
    std::vector<int> loose = user_filter(r, g, 4, 4);
    std::vector<int> tight = user_filter(r, g, 5, 5);
    for (int v : tight) CHECK(std::find(loose.begin(), loose.end(), v) != loose.end());
}

TEST_CASE("user filter cannot select users absent from the graph") {
    RatingsTable r = ratings_from("ghost\tm1\t5\n");
    Graph g = mutual_friend_graph(follows_from("a\tb\nb\ta\n"));
    CHECK(user_filter(r, g, 1, 0).empty());
}

TEST_CASE("celebrity split uses a strict follower threshold") {
    // c has 3 followers, b has 2, a has 1; mutual pairs: (a,b), (a,c), (b,c).
    FollowTable f = follows_from("a\tb\nb\ta\na\tc\nc\ta\nb\tc\nc\tb\nd\tc\n");
    CelebritySplit at_threshold = celebrity_split(f, 3, 1);
    CHECK(at_threshold.celebrities.empty());  // 3 followers is not "more than 3"

    CelebritySplit split = celebrity_split(f, 2, 1);
    CHECK(split.celebrities == std::vector<std::string>{"c"});
    // a and b remain mutual friends; d has no non-celebrity friends
    CHECK(split.kept == std::vector<std::string>{"a", "b"});

    CHECK_THROWS_AS(celebrity_split(f, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(celebrity_split(f, 1, 0), std::invalid_argument);
}

TEST_CASE("celebrity split ignores celebrity friendships when counting support") {
    // x's only mutual friend is the celebrity c, so x is dropped;
    // y and z support each other.
    std::ostringstream text;
    text << "x\tc\nc\tx\n";
    text << "y\tz\nz\ty\n";
    for (int i = 0; i < 3; ++i) text << 'f' << i << "\tc\n";
    FollowTable f = follows_from(text.str());
    CelebritySplit split = celebrity_split(f, 2, 1);
    CHECK(split.celebrities == std::vector<std::string>{"c"});
    CHECK(split.kept == std::vector<std::string>{"y", "z"});
}

TEST_CASE("item index is sorted and vectors are built against it") {
    RatingsTable r = ratings_from("u1\tzeta\t4\nu1\talpha\t2\nu2\tmid\t5\n");
    std::vector<std::string> items = item_index(r);
    CHECK(items == std::vector<std::string>{"alpha", "mid", "zeta"});

    std::vector<std::string> users = {"u1", "u2", "u3"};
    std::vector<std::string> warnings;
    BehavioralMatrix ratings = build_rating_vectors(r, items, users, &warnings);
    CHECK(ratings.kind() == VectorKind::rating);
    CHECK(ratings.dimension() == 3);
    CHECK(ratings.row(0).entries ==
          std::vector<std::pair<int, double>>{{0, 2.0}, {2, 4.0}});
    CHECK(ratings.row(1).entries == std::vector<std::pair<int, double>>{{1, 5.0}});
    CHECK(ratings.row(2).entries.empty());
    REQUIRE(warnings.size() == 1);  // u3 rated nothing
    CHECK(warnings[0].find("u3") != std::string::npos);

    BehavioralMatrix interest = build_interest_vectors(r, items, users);
    CHECK(interest.kind() == VectorKind::interest);
    CHECK(interest.row(0).entries ==
          std::vector<std::pair<int, double>>{{0, 1.0}, {2, 1.0}});

    // interest is exactly the 0/1 support of the rating vectors
    for (int u = 0; u < 3; ++u) {
        REQUIRE(interest.row(u).entries.size() == ratings.row(u).entries.size());
        for (std::size_t i = 0; i < interest.row(u).entries.size(); ++i) {
            CHECK(interest.row(u).entries[i].first == ratings.row(u).entries[i].first);
            CHECK(interest.row(u).entries[i].second == 1.0);
        }
    }

    RatingsTable stray = ratings_from("u1\tunknown\t3\n");
    CHECK_THROWS_AS(build_rating_vectors(stray, items, users), std::invalid_argument);
}

TEST_CASE("celebrity vectors mark directed follows of the celebrity index") {
    FollowTable f = follows_from("u1\tceleb0\nu2\tceleb1\nu2\tceleb0\n");
    std::vector<std::string> celebrities = {"celeb0", "celeb1"};
    std::vector<std::string> users = {"u1", "u2"};
    BehavioralMatrix m = build_celebrity_vectors(f, celebrities, users);
    CHECK(m.kind() == VectorKind::celebrity);
    CHECK(m.row(0).entries == std::vector<std::pair<int, double>>{{0, 1.0}});
    CHECK(m.row(1).entries ==
          std::vector<std::pair<int, double>>{{0, 1.0}, {1, 1.0}});
}

TEST_CASE("planted partition generator is deterministic and labeled") {
    Rng a(5), b(5), c(6);
    Graph g1 = planted_partition_graph(30, 3, 0.6, 0.05, a);
    Graph g2 = planted_partition_graph(30, 3, 0.6, 0.05, b);
    Graph g3 = planted_partition_graph(30, 3, 0.6, 0.05, c);
    CHECK(g1.content_hash() == g2.content_hash());
    CHECK(g1.content_hash() != g3.content_hash());
    CHECK(g1.label(0) == "u0");
    CHECK_THROWS_AS(planted_partition_graph(4, 9, 0.5, 0.5, a), std::invalid_argument);
}

TEST_CASE("disagreement fixture pits structure against taste") {
    DisagreementFixture fx = disagreement_fixture(3);
    CHECK(fx.graph.node_count() == 60);
    CHECK(fx.sims.size() == 60);
    CHECK(fx.structural_block.size() == 60);
    CHECK(fx.behavioral_group.size() == 60);
    // distinct behavioral groups have disjoint item support: similarity 0
    for (int u = 0; u < 60; ++u)
        for (int v = u + 1; v < 60; ++v)
            if (fx.behavioral_group[u] != fx.behavioral_group[v])
                CHECK(fx.sims(u, v) == 0.0);
    // same seed reproduces, different seed varies
    DisagreementFixture again = disagreement_fixture(3);
    CHECK(again.graph.content_hash() == fx.graph.content_hash());
    CHECK(again.sims.content_hash() == fx.sims.content_hash());
    DisagreementFixture other = disagreement_fixture(4);
    CHECK(other.sims.content_hash() != fx.sims.content_hash());
}

TEST_CASE("interest view marks the support of a rating matrix") {
    BehavioralMatrix r(2, 3, VectorKind::rating);
    r.set(0, 1, 4.0);
    r.set(1, 0, 2.0);
    BehavioralMatrix s = interest_view(r);
    CHECK(s.kind() == VectorKind::interest);
    CHECK(s.row(0).entries == std::vector<std::pair<int, double>>{{1, 1.0}});
    CHECK(s.row(1).entries == std::vector<std::pair<int, double>>{{0, 1.0}});
}

TEST_CASE("fixture writers emit loadable, reproducible datasets") {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "commdet_fixture_test";
    fs::remove_all(base);

    {
        Rng rng(9);
        write_filmtipset_fixture((base / "film_a").string(), 30, 40, 3, rng);
        Rng rng2(9);
        write_filmtipset_fixture((base / "film_b").string(), 30, 40, 3, rng2);
        CHECK(slurp((base / "film_a" / "ratings.tsv").string()) ==
              slurp((base / "film_b" / "ratings.tsv").string()));
        CHECK(slurp((base / "film_a" / "follows.tsv").string()) ==
              slurp((base / "film_b" / "follows.tsv").string()));
        RatingsTable r = load_ratings_file((base / "film_a" / "ratings.tsv").string());
        CHECK_FALSE(r.records.empty());
        FollowTable f = load_follows_file((base / "film_a" / "follows.tsv").string());
        CHECK_FALSE(f.records.empty());
        CHECK(mutual_friend_graph(f).node_count() > 0);
    }
    {
        Rng rng(9);
        write_twitter_fixture((base / "twitter").string(), 40, 3, rng);
        FollowTable f = load_follows_file((base / "twitter" / "follows.tsv").string());
        CHECK_FALSE(f.records.empty());
    }
    {
        write_planted_fixture((base / "planted").string(), 12);
        Graph g = read_edge_list_file((base / "planted" / "edges.txt").string());
        CHECK(g.node_count() == 60);
        BehavioralMatrix ratings =
            read_vectors_file((base / "planted" / "vectors_rating.txt").string(), g.labels());
        CHECK(ratings.kind() == VectorKind::rating);
        BehavioralMatrix interest =
            read_vectors_file((base / "planted" / "vectors_interest.txt").string(), g.labels());
        CHECK(interest.kind() == VectorKind::interest);
    }
    fs::remove_all(base);
}

TEST_CASE("the full ingestion pipeline is byte-identical across runs") {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "commdet_pipeline_rerun";
    fs::remove_all(base);
    Rng rng(21);
    write_filmtipset_fixture(base.string(), 40, 50, 4, rng);

    auto run_once = [&]() -> std::string {
        RatingsTable ratings = load_ratings_file((base / "ratings.tsv").string());
        FollowTable follows = load_follows_file((base / "follows.tsv").string());
        Graph mutual = mutual_friend_graph(follows);
        RatingsTable filtered = movie_filter(ratings, 30);
        std::vector<int> keep = user_filter(filtered, mutual, 2, 2);
        REQUIRE_FALSE(keep.empty());
        Graph g = induced_subgraph(mutual, keep);
        std::vector<std::string> items = item_index(filtered);
        BehavioralMatrix vec = build_rating_vectors(filtered, items, g.labels());

        std::ostringstream blob;
        write_edge_list(g, blob);
        write_vectors(vec, g.labels(), blob);
        return blob.str();
    };
    std::string first = run_once();
    std::string second = run_once();
    CHECK(first == second);
    CHECK_FALSE(first.empty());
    fs::remove_all(base);
}
