// Acceptance gate: one self-contained check per release criterion, each
// printed as a PASS/FAIL line with its wall time. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commdet/behavior.hpp"
#include "commdet/bench.hpp"
#include "commdet/graph.hpp"
#include "commdet/hier_cluster.hpp"
#include "commdet/metrics.hpp"
#include "commdet/pipeline.hpp"
#include "commdet/rng.hpp"
#include "commdet/struct_detect.hpp"
#include "oracle_helpers.hpp"

using namespace commdet;
namespace fs = std::filesystem;

namespace {

struct CheckFailure {
    std::string message;
};

void require(bool cond, const std::string& message) {
    if (!cond) throw CheckFailure{message};
}

std::string fmt_double(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- A1
// Modularity agrees with a brute-force evaluator over every partition of
// 50 random graphs (n <= 7), stays in range, scores the one-community
// partition as zero, and 1000 single-move deltas match recomputation.
std::string a1_modularity_oracle() {
    Rng rng(101);
    const auto variants = {ModularityVariant::newman, ModularityVariant::paper_literal};
    std::int64_t partition_checks = 0, delta_checks = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.uniform_int(2, 7);
        Graph g = oracle::random_graph(rng, n, 0.35);
        const auto partitions = oracle::all_partitions(n);
        for (const auto& assign : partitions) {
            Partition p = Partition::from_assignment(assign);
            for (ModularityVariant variant : variants) {
                const double q = modularity(g, p, variant);
                const double brute = oracle::brute_modularity(g, assign, variant);
                require(std::abs(q - brute) <= 1e-9,
                        "trial " + std::to_string(trial) + ": modularity " + fmt_double(q) +
                            " != brute " + fmt_double(brute));
            }
            const double qn = modularity(g, p, ModularityVariant::newman);
            require(qn >= -0.5 - 1e-12 && qn < 1.0,
                    "newman modularity " + fmt_double(qn) + " out of [-1/2, 1)");
            ++partition_checks;
        }
        Partition whole = Partition::from_assignment(std::vector<int>(n, 0));
        require(modularity(g, whole, ModularityVariant::newman) == 0.0,
                "one-community newman modularity is not exactly zero");
        require(modularity(g, whole, ModularityVariant::paper_literal) == 0.0,
                "one-community literal modularity is not exactly zero");

        for (int probe = 0; probe < 10; ++probe) {
            const auto& assign =
                partitions[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(partitions.size()) - 1))];
            Partition p = Partition::from_assignment(assign);
            PartitionStats stats = partition_stats(g, p);
            const int node = rng.uniform_int(0, n - 1);
            const int from = stats.assignment[node];
            const int target = rng.uniform_int(0, p.community_count() - 1);
            std::vector<int> moved = p.assignment;
            moved[node] = target;
            Partition after = Partition::from_assignment(moved);
            for (ModularityVariant variant : variants) {
                const double delta = modularity_delta(stats, g, node, from, target, variant);
                const double recomputed =
                    modularity(g, after, variant) - modularity(g, p, variant);
                require(std::abs(delta - recomputed) <= 1e-9,
                        "move delta " + fmt_double(delta) + " != recomputed " +
                            fmt_double(recomputed));
                ++delta_checks;
            }
        }
    }
    return std::to_string(partition_checks) + " partitions, " + std::to_string(delta_checks) +
           " move deltas";
}

// ---------------------------------------------------------------- A2
// Louvain and Girvan-Newman both recover the two planted triangles; the
// first removed edge is the bridge with betweenness 9.
std::string a2_two_triangles() {
    Graph g = oracle::two_triangles();
    const std::vector<std::vector<int>> expected = {{0, 1, 2}, {3, 4, 5}};

    LouvainResult lv = louvain(g);
    require(lv.partition.members == expected, "louvain did not recover the triangles");
    require(std::abs(lv.modularity - 5.0 / 14.0) <= 1e-9,
            "louvain modularity " + fmt_double(lv.modularity) + " != 5/14");

    std::vector<RemovedEdge> removals;
    Dendrogram d = girvan_newman(g, &removals);
    require(!removals.empty(), "no removals recorded");
    require(removals[0].u == 2 && removals[0].v == 3, "first removal is not the bridge");
    require(std::abs(removals[0].betweenness - 9.0) <= 1e-9,
            "bridge betweenness " + fmt_double(removals[0].betweenness) + " != 9");
    Partition two = cut(d, 2);
    require(two.members == expected, "girvan-newman cut at k=2 is not the triangles");
    require(std::abs(modularity(g, two, ModularityVariant::newman) - 5.0 / 14.0) <= 1e-9,
            "girvan-newman cut modularity != 5/14");
    return "both algorithms recover the planted split";
}

// ---------------------------------------------------------------- A3
// Edge betweenness matches a brute-force all-shortest-paths enumerator on
// 100 random graphs with up to 9 nodes.
std::string a3_betweenness_oracle() {
    Rng rng(103);
    std::int64_t edges_checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform_int(2, 9);
        Graph g = oracle::random_graph(rng, n, 0.3);
        BetweennessTable table = edge_betweenness(g);
        auto brute = oracle::brute_edge_betweenness(g);
        require(table.values.size() == brute.size(), "edge sets differ");
        for (const auto& [edge, score] : brute) {
            const double fast = table.at(edge.first, edge.second);
            require(std::abs(fast - score) <= 1e-9,
                    "trial " + std::to_string(trial) + " edge (" +
                        std::to_string(edge.first) + "," + std::to_string(edge.second) +
                        "): " + fmt_double(fast) + " != " + fmt_double(score));
            ++edges_checked;
        }
    }
    return std::to_string(edges_checked) + " edge scores matched";
}

// ---------------------------------------------------------------- A4
// The like-mindedness merge engine reproduces a naive full-rescan
// implementation exactly — same pairs, same order, bitwise-equal scores —
// on 50 random dyadic similarity matrices.
std::string a4_lmm_oracle() {
    Rng rng(104);
    std::int64_t steps_checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.uniform_int(2, 8);
        SimMatrix s = oracle::dyadic_sims(rng, n);
        LmmStats stats;
        Dendrogram d = lmm_agglomerate(s, &stats);
        auto naive = oracle::naive_merge_sequence(s, 3);
        require(d.steps.size() == naive.size(), "merge counts differ");
        for (std::size_t i = 0; i < naive.size(); ++i) {
            const MergeStep& got = d.steps[i];
            const MergeStep& want = naive[i];
            require(got.a == want.a && got.b == want.b && got.merged == want.merged,
                    "trial " + std::to_string(trial) + " step " + std::to_string(i) +
                        ": merged (" + std::to_string(got.a) + "," + std::to_string(got.b) +
                        ") want (" + std::to_string(want.a) + "," + std::to_string(want.b) +
                        ")");
            require(got.score == want.score,
                    "trial " + std::to_string(trial) + " step " + std::to_string(i) +
                        ": score " + fmt_double(got.score) + " != " + fmt_double(want.score));
            ++steps_checked;
        }
        const auto pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        require(stats.sim_accesses == pairs, "similarity matrix read more than once per pair");
    }
    return std::to_string(steps_checked) + " merge steps matched bitwise";
}

// ---------------------------------------------------------------- A5
// Every hierarchy-producing algorithm yields, at every level k, a partition
// with exactly k communities that refines the next coarser level, and the
// like-mindedness column written to the CSV matches a from-scratch
// recomputation at 1e-12 after a parse round-trip.
std::string a5_hierarchy_refinement() {
    Rng rng(105);
    const int n = 14;
    Graph g = oracle::random_graph(rng, n, 0.3);
    SimMatrix s = oracle::dyadic_sims(rng, n);

    SweepInputs in;
    in.graph = &g;
    in.sims.emplace(VectorKind::interest, &s);
    SweepResult res = sweep(in, parse_algorithm_codes("GN,SS,AS,CS,LMMS"));
    std::istringstream csv(metrics_csv(res.series));
    MetricSeries parsed = parse_metrics_csv(csv);

    std::map<std::string, Dendrogram> hierarchies;
    hierarchies.emplace("GN", girvan_newman(g));
    hierarchies.emplace("SS", agglomerate(s, Linkage::single));
    hierarchies.emplace("AS", agglomerate(s, Linkage::average));
    hierarchies.emplace("CS", agglomerate(s, Linkage::complete));
    hierarchies.emplace("LMMS", lmm_agglomerate(s));

    std::map<std::string, Partition> previous;  // finer partition seen last per code
    std::int64_t rows_checked = 0;
    for (const MetricRow& row : parsed.rows) {
        const Dendrogram& d = hierarchies.at(row.algorithm);
        Partition p = cut(d, row.k);
        require(p.community_count() == row.k,
                row.algorithm + " k=" + std::to_string(row.k) + ": cut has " +
                    std::to_string(p.community_count()) + " communities");
        auto it = previous.find(row.algorithm);
        if (it != previous.end()) {
            // rows descend in k, so the previous partition must refine this one
            const Partition& fine = it->second;
            for (const auto& community : fine.members) {
                const int target = p.assignment[community[0]];
                for (int member : community)
                    require(p.assignment[member] == target,
                            row.algorithm + " k=" + std::to_string(row.k) +
                                ": previous level does not refine this one");
            }
        }
        require(std::abs(row.like_mindedness - like_mindedness(s, p)) <= 1e-12,
                row.algorithm + " k=" + std::to_string(row.k) + ": csv like-mindedness " +
                    fmt_double(row.like_mindedness) + " != recomputed " +
                    fmt_double(like_mindedness(s, p)));
        previous.insert_or_assign(row.algorithm, std::move(p));
        ++rows_checked;
    }
    require(rows_checked > 0, "sweep produced no rows");
    return std::to_string(rows_checked) + " levels across 5 hierarchies";
}

// ---------------------------------------------------------------- A6
// On fixtures whose structure and behavior disagree, modified louvain
// reaches at least the like-mindedness of plain louvain on >= 8 of 10
// seeds while staying within 0.15 modularity on the original graph.
std::string a6_modified_louvain_improvement() {
    int wins = 0;
    std::ostringstream table;
    table << "\n    seed  L(louvain)  L(modified)   Q(louvain)  Q(modified)";
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        DisagreementFixture fx = disagreement_fixture(seed);
        LouvainResult lv = louvain(fx.graph);
        ModifiedLouvainResult ml = modified_louvain(fx.graph, fx.sims);
        const double l_plain = like_mindedness(fx.sims, lv.partition);
        const double l_mod = ml.like_mindedness;
        if (l_mod >= l_plain - 1e-12) ++wins;
        const double q_gap = std::abs(lv.modularity - ml.modularity_original_newman);
        table << "\n    " << seed << "     " << fmt_double(l_plain) << "  " << fmt_double(l_mod)
              << "  " << fmt_double(lv.modularity) << "  "
              << fmt_double(ml.modularity_original_newman);
        require(q_gap <= 0.15, "seed " + std::to_string(seed) + ": modularity gap " +
                                   fmt_double(q_gap) + " exceeds 0.15");
    }
    require(wins >= 8, "modified louvain improved like-mindedness on only " +
                           std::to_string(wins) + "/10 seeds");
    return "improved on " + std::to_string(wins) + "/10 seeds" + table.str();
}

// ---------------------------------------------------------------- A7
// Homophily ratio: planted two-clique graph with 0.9 intra / 0.1 cross
// similarity scores 9.0; a uniform matrix scores exactly 1.0.
std::string a7_homophily() {
    std::vector<std::pair<int, int>> edges;
    for (int base : {0, 3})
        for (int u = base; u < base + 3; ++u)
            for (int v = u + 1; v < base + 3; ++v) edges.emplace_back(u, v);
    Graph g = Graph::build(6, edges);

    SimMatrix planted(6);
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) planted.set(u, v, (u / 3 == v / 3) ? 0.9 : 0.1);
    const double ratio = homophily_ratio(g, planted);
    require(std::abs(ratio - 9.0) <= 1e-9, "planted ratio " + fmt_double(ratio) + " != 9.0");

    SimMatrix uniform(6);
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) uniform.set(u, v, 0.5);
    const double flat = homophily_ratio(g, uniform);
    require(flat == 1.0, "uniform ratio " + fmt_double(flat) + " is not exactly 1.0");
    return "planted 9.0, uniform exactly 1.0";
}

// ---------------------------------------------------------------- A8
// Ingestion boundary semantics hold exactly, and the full pipeline is
// byte-identical across re-runs.
std::string a8_pipeline_boundaries() {
    {  // movie filter removes items at the threshold, keeps those below
        std::istringstream in(
            "a\tpop\t5\nb\tpop\t4\nc\tpop\t3\na\tok\t2\nb\tok\t1\n");
        RatingsTable r = load_ratings(in);
        RatingsTable filtered = movie_filter(r, 3);
        require(filtered.item_rating_counts.count("pop") == 0,
                "item rated exactly max_popularity times survived");
        require(filtered.item_rating_counts.at("ok") == 2, "item below the threshold was lost");
        require(filtered.user_rating_counts.at("a") == 1, "user counts were not recomputed");
    }
    {  // user filter keeps at-threshold users, drops one-short users
        std::istringstream follows(
            "u1\tu2\nu2\tu1\nu1\tu3\nu3\tu1\nu2\tu3\nu3\tu2\n");
        FollowTable f = load_follows(follows);
        Graph g = mutual_friend_graph(f);
        std::ostringstream ratings;
        for (int i = 0; i < 3; ++i) ratings << "u1\ti" << i << "\t3\n";
        for (int i = 0; i < 2; ++i) ratings << "u2\ti" << i << "\t4\n";
        std::istringstream rin(ratings.str());
        RatingsTable r = load_ratings(rin);
        std::vector<int> kept = user_filter(r, g, 3, 2);
        require(kept == std::vector<int>{g.index_of("u1")},
                "user filter boundary is not >= on both counts");
    }
    {  // celebrity threshold is strict
        std::ostringstream follows;
        for (int i = 0; i < 3; ++i) follows << "f" << i << "\tstar\n";
        for (int i = 0; i < 3; ++i) follows << "f" << i << "\talmost\n";
        follows << "star\tf0\n";  // give 'almost' exactly 3 followers too
        std::istringstream fin(follows.str() + "almost\tf1\n");
        FollowTable f = load_follows(fin);
        require(f.follower_counts.at("star") == 3 && f.follower_counts.at("almost") == 3,
                "fixture construction: both should have 3 followers");
        CelebritySplit split = celebrity_split(f, 3, 1);
        require(split.celebrities.empty(), "follower count == threshold must not be celebrity");
        CelebritySplit split2 = celebrity_split(f, 2, 1);
        require(split2.celebrities == std::vector<std::string>{"almost", "star"},
                "follower count above threshold must be celebrity");
    }
    {  // duplicate ratings: last value wins, first-appearance position kept
        std::istringstream in("u\tm\t1\nu\tn\t2\nu\tm\t5\n");
        RatingsTable r = load_ratings(in);
        require(r.records.size() == 2, "duplicate pair was not collapsed");
        require(r.records[0] == RatingRecord{"u", "m", 5}, "last write did not win in place");
    }
    {  // self-follows are dropped, mutual edges need both directions
        std::vector<std::string> warnings;
        std::istringstream in("a\ta\na\tb\nb\ta\na\tc\n");
        FollowTable f = load_follows(in, &warnings);
        require(warnings.size() == 1 && warnings[0].find("self-follow") != std::string::npos,
                "self-follow did not warn");
        Graph g = mutual_friend_graph(f);
        require(g.edge_count() == 1, "one-way follow produced an edge");
        require(g.degree(g.index_of("c")) == 0, "one-way followee got a neighbor");
    }

    // Full pipeline, twice, byte-identical outputs.
    auto run_pipeline = [](const fs::path& dir) {
        RatingsTable ratings = load_ratings_file((dir / "ratings.tsv").string());
        FollowTable follows = load_follows_file((dir / "follows.tsv").string());
        Graph g = mutual_friend_graph(follows);
        RatingsTable filtered = movie_filter(ratings, 30);
        std::vector<int> kept = user_filter(filtered, g, 2, 2);
        Graph sub = induced_subgraph(g, kept);
        std::vector<std::string> items = item_index(filtered);
        BehavioralMatrix vectors = build_rating_vectors(filtered, items, sub.labels());
        std::ostringstream bytes;
        write_edge_list(sub, bytes);
        write_vectors(vectors, sub.labels(), bytes);
        return bytes.str();
    };
    fs::path base = fs::temp_directory_path() / "commdet_acceptance_a8";
    fs::remove_all(base);
    fs::path da = base / "a", db = base / "b";
    fs::create_directories(da);
    fs::create_directories(db);
    {
        Rng ra(21), rb(21);
        write_filmtipset_fixture(da.string(), 40, 50, 4, ra);
        write_filmtipset_fixture(db.string(), 40, 50, 4, rb);
    }
    auto read_file = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    };
    require(read_file(da / "ratings.tsv") == read_file(db / "ratings.tsv") &&
                read_file(da / "follows.tsv") == read_file(db / "follows.tsv"),
            "fixture generation is not deterministic");
    const std::string first = run_pipeline(da);
    const std::string second = run_pipeline(da);
    const std::string other = run_pipeline(db);
    require(!first.empty(), "pipeline produced no output");
    require(first == second, "re-running the pipeline changed its bytes");
    require(first == other, "pipeline output differs across identical fixtures");
    fs::remove_all(base);
    return "boundary semantics exact; " + std::to_string(first.size()) +
           " output bytes reproduced identically";
}

// ---------------------------------------------------------------- A9
// Performance smoke test at n = 2000: louvain under 5 s, the
// like-mindedness hierarchy and modified louvain under 10 min each, and
// the merge engine reads each similarity pair at most once.
std::string a9_performance() {
    Rng rng(109);
    const int n = 2000, dims = 200, per_node = 20;
    Graph g = planted_partition_graph(n, 8, 0.028, 0.0008, rng);

    BehavioralMatrix vectors(n, dims, VectorKind::interest);
    for (int v = 0; v < n; ++v)
        for (int d : rng.sample(dims, per_node)) vectors.set(v, d, 1.0);
    SimMatrix sims = similarity_matrix(vectors);

    auto t0 = std::chrono::steady_clock::now();
    LouvainResult lv = louvain(g);
    const double t_louvain = seconds_since(t0);
    require(t_louvain < 5.0, "louvain took " + fmt_double(t_louvain) + " s (budget 5 s)");
    require(lv.partition.community_count() >= 1, "louvain produced no partition");

    t0 = std::chrono::steady_clock::now();
    LmmStats stats;
    Dendrogram d = lmm_agglomerate(sims, &stats);
    const double t_lmm = seconds_since(t0);
    require(t_lmm < 600.0, "lmm hierarchy took " + fmt_double(t_lmm) + " s (budget 600 s)");
    require(d.steps.size() == static_cast<std::size_t>(n - 1), "lmm hierarchy is incomplete");
    const auto pair_budget = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    require(stats.sim_accesses <= pair_budget,
            "merge engine read " + std::to_string(stats.sim_accesses) + " sims (budget " +
                std::to_string(pair_budget) + ")");

    t0 = std::chrono::steady_clock::now();
    ModifiedLouvainResult ml = modified_louvain(g, sims);
    const double t_ml = seconds_since(t0);
    require(t_ml < 600.0, "modified louvain took " + fmt_double(t_ml) + " s (budget 600 s)");
    require(ml.partition.community_count() >= 1, "modified louvain produced no partition");

    std::ostringstream out;
    out.precision(2);
    out << std::fixed << "louvain " << t_louvain << " s, lmm hierarchy " << t_lmm
        << " s, modified louvain " << t_ml << " s, sim reads " << stats.sim_accesses << "/"
        << pair_budget;
    return out.str();
}

struct Criterion {
    const char* id;
    const char* name;
    std::string (*run)();
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"A1", "modularity matches the exhaustive oracle", a1_modularity_oracle},
        {"A2", "two-triangle fixture is recovered", a2_two_triangles},
        {"A3", "edge betweenness matches the path enumerator", a3_betweenness_oracle},
        {"A4", "lmm merges match the naive engine bitwise", a4_lmm_oracle},
        {"A5", "hierarchy levels refine and match the csv", a5_hierarchy_refinement},
        {"A6", "modified louvain lifts like-mindedness", a6_modified_louvain_improvement},
        {"A7", "homophily ratio on planted cliques", a7_homophily},
        {"A8", "pipeline boundaries and reproducibility", a8_pipeline_boundaries},
        {"A9", "performance smoke at n=2000", a9_performance},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = true;
        try {
            detail = c.run();
        } catch (const CheckFailure& f) {
            pass = false;
            detail = f.message;
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("unexpected exception: ") + e.what();
        }
        const double elapsed = seconds_since(start);
        std::ostringstream line;
        line.precision(2);
        line << (pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << "  ("
             << std::fixed << elapsed << " s)";
        if (!detail.empty()) line << "  -- " << detail;
        std::cout << line.str() << std::endl;
        if (!pass) ++failures;
    }
    if (failures == 0)
        std::cout << "all " << std::size(criteria) << " acceptance criteria passed" << std::endl;
    else
        std::cout << failures << " acceptance criteria FAILED" << std::endl;
    return failures;
}
