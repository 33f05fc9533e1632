#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commdet/behavior.hpp"
#include "commdet/bench.hpp"
#include "commdet/graph.hpp"
#include "commdet/hier_cluster.hpp"
#include "commdet/metrics.hpp"
#include "commdet/pipeline.hpp"
#include "commdet/rng.hpp"
#include "commdet/struct_detect.hpp"

namespace {

/// Distinguishes operator mistakes (exit 1) from bad data (exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
}

commdet::ModularityVariant variant_of(const std::string& name) {
    auto v = commdet::modularity_variant_from_string(name);
    if (!v)
        throw UsageError("unknown modularity variant '" + name + "' (newman | paper_literal)");
    return *v;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

/// Plain key=value file; '#' comments. Keys restricted to the filter
/// parameter vocabulary.
std::map<std::string, std::int64_t> read_config(const std::string& path) {
    static const std::set<std::string> kKeys = {"movie_max_popularity", "min_ratings",
                                                "min_friends", "celeb_threshold",
                                                "min_noncelebrity_friends"};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    std::map<std::string, std::int64_t> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                     ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (kKeys.find(key) == kKeys.end())
            throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        std::int64_t parsed = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
        if (ec != std::errc() || ptr != value.data() + value.size())
            throw std::runtime_error(path + " line " + std::to_string(line_no) +
                                     ": bad integer '" + value + "'");
        out[key] = parsed;
    }
    return out;
}

/// Build similarity matrices from the per-kind vectors files that were given.
/// The file's own kind header must agree with the flag it arrived under.
std::map<commdet::VectorKind, commdet::SimMatrix> load_sims(const commdet::Graph& g,
                                                            const std::string& rating_path,
                                                            const std::string& interest_path,
                                                            const std::string& celebrity_path) {
    std::map<commdet::VectorKind, commdet::SimMatrix> sims;
    auto add = [&](commdet::VectorKind kind, const std::string& path) {
        if (path.empty()) return;
        commdet::BehavioralMatrix m = commdet::read_vectors_file(path, g.labels());
        if (m.kind() != kind)
            throw UsageError(path + " holds " + commdet::to_string(m.kind()) +
                             " vectors, not " + commdet::to_string(kind));
        sims.emplace(kind, commdet::similarity_matrix(m));
    };
    add(commdet::VectorKind::rating, rating_path);
    add(commdet::VectorKind::interest, interest_path);
    add(commdet::VectorKind::celebrity, celebrity_path);
    return sims;
}

/// Highest-priority similarity matrix for evaluation-only uses.
const commdet::SimMatrix* eval_sim(const std::map<commdet::VectorKind, commdet::SimMatrix>& sims) {
    for (commdet::VectorKind kind : {commdet::VectorKind::interest, commdet::VectorKind::rating,
                                     commdet::VectorKind::celebrity})
        if (auto it = sims.find(kind); it != sims.end()) return &it->second;
    return nullptr;
}

std::optional<double> try_homophily(const commdet::Graph& g,
                                    const std::map<commdet::VectorKind, commdet::SimMatrix>& sims) {
    const commdet::SimMatrix* s = eval_sim(sims);
    if (!s) return std::nullopt;
    try {
        return commdet::homophily_ratio(g, *s);
    } catch (const std::exception& e) {
        std::cerr << "warning: homophily not calculated: " << e.what() << '\n';
        return std::nullopt;
    }
}

const commdet::SimMatrix& sim_for_code(const commdet::AlgorithmCode& code,
                                       const std::map<commdet::VectorKind, commdet::SimMatrix>& sims) {
    if (code.vectors) {
        auto it = sims.find(*code.vectors);
        if (it == sims.end())
            throw UsageError("code " + code.code + " requires --" +
                             std::string(commdet::to_string(*code.vectors)) + "-vectors");
        return it->second;
    }
    if (auto it = sims.find(commdet::VectorKind::celebrity); it != sims.end()) return it->second;
    if (sims.size() == 1) return sims.begin()->second;
    throw UsageError("code " + code.code +
                     " is ambiguous: supply --celebrity-vectors or exactly one vectors file");
}

commdet::Linkage linkage_for(commdet::AlgorithmCode::Family family) {
    using F = commdet::AlgorithmCode::Family;
    if (family == F::single_linkage) return commdet::Linkage::single;
    if (family == F::average_linkage) return commdet::Linkage::average;
    return commdet::Linkage::complete;
}

commdet::Partition detect_partition(const commdet::Graph& g, const commdet::AlgorithmCode& code,
                                    const std::map<commdet::VectorKind, commdet::SimMatrix>& sims,
                                    commdet::ModularityVariant variant, std::optional<int> k) {
    using F = commdet::AlgorithmCode::Family;
    auto cut_at = [&](const commdet::Dendrogram& d) {
        if (k) {
            if (*k < d.min_cut() || *k > d.leaf_count)
                throw UsageError("--k " + std::to_string(*k) + " outside [" +
                                 std::to_string(d.min_cut()) + ", " +
                                 std::to_string(d.leaf_count) + "]");
            return commdet::cut(d, *k);
        }
        int best_k = d.leaf_count;
        double best = -HUGE_VAL;
        for (int level = d.leaf_count; level >= d.min_cut(); --level) {
            double q = commdet::modularity(g, commdet::cut(d, level),
                                           commdet::ModularityVariant::newman);
            if (q > best) {
                best = q;
                best_k = level;
            }
        }
        return commdet::cut(d, best_k);
    };
    switch (code.family) {
        case F::girvan_newman:
            if (g.node_count() > 5000)
                std::cerr << "warning: girvan-newman on " << g.node_count()
                          << " nodes: expect long runtimes\n";
            return cut_at(commdet::girvan_newman(g));
        case F::single_linkage:
        case F::average_linkage:
        case F::complete_linkage:
            return cut_at(commdet::agglomerate(sim_for_code(code, sims),
                                               linkage_for(code.family)));
        case F::lmm:
            return cut_at(commdet::lmm_agglomerate(sim_for_code(code, sims)));
        case F::louvain:
            if (k) throw UsageError("--k applies to hierarchical codes only");
            return commdet::louvain(g, {variant, false}).partition;
        case F::modified_louvain:
            if (k) throw UsageError("--k applies to hierarchical codes only");
            return commdet::modified_louvain(g, sim_for_code(code, sims), {variant, false})
                .partition;
    }
    throw std::logic_error("unhandled algorithm family");
}

void write_or_print(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + out_path);
}

std::vector<std::string> read_label_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        labels.push_back(t);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"community detection over social graphs and behavioral vectors"};
    app.require_subcommand(1);

    // ---- stats ----
    auto* stats_cmd = app.add_subcommand("stats", "network statistics for an edge-list graph");
    std::string st_graph, st_rating, st_interest, st_celebrity;
    bool st_json = false;
    stats_cmd->add_option("--graph", st_graph, "edge-list file")->required();
    stats_cmd->add_option("--rating-vectors", st_rating, "rating vectors file");
    stats_cmd->add_option("--interest-vectors", st_interest, "interest vectors file");
    stats_cmd->add_option("--celebrity-vectors", st_celebrity, "celebrity vectors file");
    stats_cmd->add_flag("--json", st_json, "emit JSON instead of a table");
    stats_cmd->callback([&] {
        commdet::Graph g = commdet::read_edge_list_file(st_graph);
        auto sims = load_sims(g, st_rating, st_interest, st_celebrity);
        std::optional<double> hom = try_homophily(g, sims);
        commdet::NetworkStats ns = commdet::network_stats(g);
        std::cout << (st_json ? commdet::stats_json(ns, hom) : commdet::stats_table(ns, hom));
    });

    // ---- filter ----
    auto* filter_cmd = app.add_subcommand(
        "filter", "apply the popularity/activity/celebrity filtering cascade");
    std::string fl_ratings, fl_follows, fl_config, fl_out;
    std::int64_t fl_movie_max = 0, fl_min_ratings = 0, fl_min_friends = 0;
    std::int64_t fl_celeb_threshold = 0, fl_min_noncelebrity = 0;
    filter_cmd->add_option("--ratings", fl_ratings, "ratings TSV (ratings-style dataset)");
    filter_cmd->add_option("--follows", fl_follows, "follows TSV")->required();
    filter_cmd->add_option("--config", fl_config, "key=value parameter file");
    filter_cmd->add_option("--movie-max-popularity", fl_movie_max,
                           "drop items rated at least this many times (default 50)");
    filter_cmd->add_option("--min-ratings", fl_min_ratings,
                           "keep users rating at least this many surviving items (default 5)");
    filter_cmd->add_option("--min-friends", fl_min_friends,
                           "keep users with at least this many mutual friends (default 5)");
    filter_cmd->add_option("--celeb-threshold", fl_celeb_threshold,
                           "celebrity = follower count strictly above this (default 10000)");
    filter_cmd->add_option("--min-noncelebrity-friends", fl_min_noncelebrity,
                           "keep non-celebrities with at least this many non-celebrity mutual "
                           "friends (default 5000)");
    filter_cmd->add_option("--out", fl_out, "output directory")->required();
    filter_cmd->callback([&] {
        std::map<std::string, std::int64_t> cfg;
        if (!fl_config.empty()) cfg = read_config(fl_config);
        auto resolve = [&](const char* flag, const char* key, std::int64_t flag_value,
                           std::int64_t fallback) {
            if (filter_cmd->count(flag) > 0) return flag_value;
            if (auto it = cfg.find(key); it != cfg.end()) return it->second;
            return fallback;
        };
        std::vector<std::string> warnings;
        namespace fs = std::filesystem;
        fs::create_directories(fl_out);
        commdet::FollowTable follows = commdet::load_follows_file(fl_follows, &warnings);
        if (!fl_ratings.empty()) {
            std::int64_t movie_max =
                resolve("--movie-max-popularity", "movie_max_popularity", fl_movie_max, 50);
            std::int64_t min_ratings = resolve("--min-ratings", "min_ratings", fl_min_ratings, 5);
            std::int64_t min_friends = resolve("--min-friends", "min_friends", fl_min_friends, 5);
            commdet::RatingsTable ratings = commdet::load_ratings_file(fl_ratings, &warnings);
            commdet::Graph mutual = commdet::mutual_friend_graph(follows);
            commdet::RatingsTable filtered = commdet::movie_filter(ratings, movie_max);
            std::vector<int> keep =
                commdet::user_filter(filtered, mutual, min_ratings, min_friends);
            if (keep.empty()) throw std::runtime_error("filtering removed every user");
            commdet::Graph out_graph = commdet::induced_subgraph(mutual, keep);
            commdet::write_edge_list_file(out_graph, fl_out + "/edges.txt");
            std::set<std::string> kept_users(out_graph.labels().begin(),
                                             out_graph.labels().end());
            std::ofstream rout(fl_out + "/ratings.tsv", std::ios::binary);
            if (!rout) throw std::runtime_error("cannot write " + fl_out + "/ratings.tsv");
            std::set<std::string> items;
            for (const commdet::RatingRecord& rec : filtered.records)
                if (kept_users.count(rec.user)) {
                    rout << rec.user << '\t' << rec.item << '\t' << rec.rating << '\n';
                    items.insert(rec.item);
                }
            std::ofstream iout(fl_out + "/items.txt", std::ios::binary);
            if (!iout) throw std::runtime_error("cannot write " + fl_out + "/items.txt");
            for (const std::string& item : items) iout << item << '\n';
            std::cerr << "kept " << out_graph.node_count() << " users, "
                      << out_graph.edge_count() << " friendships, " << items.size()
                      << " items\n";
        } else {
            std::int64_t celeb_threshold =
                resolve("--celeb-threshold", "celeb_threshold", fl_celeb_threshold, 10000);
            std::int64_t min_noncelebrity = resolve(
                "--min-noncelebrity-friends", "min_noncelebrity_friends", fl_min_noncelebrity,
                5000);
            commdet::CelebritySplit split =
                commdet::celebrity_split(follows, celeb_threshold, min_noncelebrity);
            if (split.kept.empty()) throw std::runtime_error("filtering removed every user");
            commdet::Graph mutual = commdet::mutual_friend_graph(follows);
            std::vector<int> keep;
            for (const std::string& label : split.kept) {
                int id = mutual.index_of(label);
                if (id >= 0) keep.push_back(id);
            }
            commdet::Graph out_graph = commdet::induced_subgraph(mutual, keep);
            commdet::write_edge_list_file(out_graph, fl_out + "/edges.txt");
            std::ofstream cout_file(fl_out + "/celebrities.txt", std::ios::binary);
            if (!cout_file)
                throw std::runtime_error("cannot write " + fl_out + "/celebrities.txt");
            for (const std::string& celeb : split.celebrities) cout_file << celeb << '\n';
            std::cerr << "kept " << out_graph.node_count() << " users, "
                      << out_graph.edge_count() << " friendships, " << split.celebrities.size()
                      << " celebrities\n";
        }
        print_warnings(warnings);
    });

    // ---- vectors ----
    auto* vectors_cmd =
        app.add_subcommand("vectors", "build behavioral vectors for a graph's users");
    std::string vc_graph, vc_kind, vc_ratings, vc_follows, vc_celebrities, vc_out, vc_cache;
    vectors_cmd->add_option("--graph", vc_graph, "edge-list file fixing the user order")
        ->required();
    vectors_cmd->add_option("--vectors", vc_kind, "rating | interest | celebrity")->required();
    vectors_cmd->add_option("--ratings", vc_ratings, "ratings TSV (rating/interest kinds)");
    vectors_cmd->add_option("--follows", vc_follows, "follows TSV (celebrity kind)");
    vectors_cmd->add_option("--celebrities", vc_celebrities,
                            "celebrity labels, one per line (celebrity kind)");
    vectors_cmd->add_option("--out", vc_out, "vectors file to write")->required();
    vectors_cmd->add_option("--sim-cache", vc_cache,
                            "also write the similarity matrix cache here");
    vectors_cmd->callback([&] {
        auto kind = commdet::vector_kind_from_string(vc_kind);
        if (!kind)
            throw UsageError("unknown vector kind '" + vc_kind +
                             "' (rating | interest | celebrity)");
        commdet::Graph g = commdet::read_edge_list_file(vc_graph);
        std::vector<std::string> warnings;
        std::optional<commdet::BehavioralMatrix> matrix;
        if (*kind == commdet::VectorKind::celebrity) {
            if (vc_follows.empty() || vc_celebrities.empty())
                throw UsageError("celebrity vectors need --follows and --celebrities");
            commdet::FollowTable follows = commdet::load_follows_file(vc_follows, &warnings);
            std::vector<std::string> celebrities = read_label_lines(vc_celebrities);
            matrix = commdet::build_celebrity_vectors(follows, celebrities, g.labels(),
                                                      &warnings);
        } else {
            if (vc_ratings.empty())
                throw UsageError("rating/interest vectors need --ratings");
            commdet::RatingsTable ratings = commdet::load_ratings_file(vc_ratings, &warnings);
            std::vector<std::string> items = commdet::item_index(ratings);
            matrix = *kind == commdet::VectorKind::rating
                         ? commdet::build_rating_vectors(ratings, items, g.labels(), &warnings)
                         : commdet::build_interest_vectors(ratings, items, g.labels(),
                                                           &warnings);
        }
        commdet::write_vectors_file(*matrix, g.labels(), vc_out);
        if (!vc_cache.empty()) {
            commdet::SimMatrix s = commdet::similarity_matrix(*matrix);
            commdet::write_sim_cache(s, *kind, matrix->content_hash(), vc_cache);
        }
        print_warnings(warnings);
        std::cerr << "wrote " << matrix->node_count() << " vectors of dimension "
                  << matrix->dimension() << '\n';
    });

    // ---- detect ----
    auto* detect_cmd = app.add_subcommand("detect", "run one algorithm, emit the partition");
    std::string dt_graph, dt_code, dt_linkage, dt_variant = "newman", dt_out;
    std::string dt_rating, dt_interest, dt_celebrity;
    int dt_k = 0;
    detect_cmd->add_option("--graph", dt_graph, "edge-list file")->required();
    detect_cmd->add_option("--algorithm", dt_code, "algorithm code (see README table)");
    detect_cmd->add_option("--linkage", dt_linkage,
                           "single | average | complete (behavioral clustering; alternative "
                           "to --algorithm)");
    detect_cmd->add_option("--k", dt_k, "cut level for hierarchical codes (default: best "
                                        "modularity)");
    detect_cmd->add_option("--modularity-variant", dt_variant,
                           "newman | paper_literal (louvain-family gain measure)");
    detect_cmd->add_option("--rating-vectors", dt_rating, "rating vectors file");
    detect_cmd->add_option("--interest-vectors", dt_interest, "interest vectors file");
    detect_cmd->add_option("--celebrity-vectors", dt_celebrity, "celebrity vectors file");
    detect_cmd->add_option("--out", dt_out, "write the partition JSON here (default stdout)");
    detect_cmd->callback([&] {
        commdet::Graph g = commdet::read_edge_list_file(dt_graph);
        if (dt_code.empty() == dt_linkage.empty())
            throw UsageError("give exactly one of --algorithm or --linkage");
        std::string raw = dt_code;
        if (!dt_linkage.empty()) {
            auto linkage = commdet::linkage_from_string(dt_linkage);
            if (!linkage)
                throw UsageError("unknown linkage '" + dt_linkage +
                                 "' (single | average | complete)");
            raw = *linkage == commdet::Linkage::single    ? "S"
                  : *linkage == commdet::Linkage::average ? "A"
                                                          : "C";
        }
        commdet::AlgorithmCode code;
        try {
            code = commdet::parse_algorithm_code(raw);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        auto sims = load_sims(g, dt_rating, dt_interest, dt_celebrity);
        std::optional<int> k;
        if (detect_cmd->count("--k") > 0) k = dt_k;
        commdet::Partition p =
            detect_partition(g, code, sims, variant_of(dt_variant), k);
        write_or_print(commdet::partition_json(code.code, g, p) + "\n", dt_out);
    });

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "run algorithms across community counts and emit csv/plots/partitions");
    std::string sw_graph, sw_codes, sw_variant = "newman", sw_out;
    std::string sw_rating, sw_interest, sw_celebrity;
    sweep_cmd->add_option("--graph", sw_graph, "edge-list file")->required();
    sweep_cmd->add_option("--algorithms", sw_codes, "comma-separated algorithm codes")
        ->required();
    sweep_cmd->add_option("--modularity-variant", sw_variant,
                          "newman | paper_literal (louvain-family gain measure)");
    sweep_cmd->add_option("--rating-vectors", sw_rating, "rating vectors file");
    sweep_cmd->add_option("--interest-vectors", sw_interest, "interest vectors file");
    sweep_cmd->add_option("--celebrity-vectors", sw_celebrity, "celebrity vectors file");
    sweep_cmd->add_option("--out", sw_out, "output directory")->required();
    sweep_cmd->callback([&] {
        commdet::Graph g = commdet::read_edge_list_file(sw_graph);
        auto sim_storage = load_sims(g, sw_rating, sw_interest, sw_celebrity);
        if (sim_storage.empty())
            throw UsageError("sweep needs at least one vectors file");
        commdet::SweepInputs inputs;
        inputs.graph = &g;
        for (const auto& [kind, s] : sim_storage) inputs.sims.emplace(kind, &s);
        std::vector<commdet::AlgorithmCode> codes;
        try {
            codes = commdet::parse_algorithm_codes(sw_codes);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (codes.empty()) throw UsageError("--algorithms lists no codes");
        commdet::SweepOptions options;
        options.variant = variant_of(sw_variant);
        commdet::SweepResult result;
        try {
            result = commdet::sweep(inputs, codes, options);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        commdet::NetworkStats ns = commdet::network_stats(g);
        std::optional<double> hom = try_homophily(g, sim_storage);
        commdet::emit_outputs(result, g, ns, hom, sw_out);
        print_warnings(result.warnings);
        std::cout << commdet::max_modularity_report(result.series);
        std::cerr << "outputs written to " << sw_out << '\n';
    });

    // ---- report ----
    auto* report_cmd =
        app.add_subcommand("report", "summarize a metrics.csv into the max-modularity table");
    std::string rp_metrics;
    report_cmd->add_option("--metrics", rp_metrics, "metrics.csv produced by sweep")
        ->required();
    report_cmd->callback([&] {
        commdet::MetricSeries series = commdet::parse_metrics_csv_file(rp_metrics);
        std::cout << commdet::max_modularity_report(series);
    });

    // ---- fixture ----
    auto* fixture_cmd =
        app.add_subcommand("fixture", "generate a synthetic miniature dataset");
    std::string fx_type, fx_out;
    std::uint64_t fx_seed = 1;
    int fx_users = 60, fx_items = 90, fx_groups = 3, fx_celebrities = 4;
    fixture_cmd->add_option("--type", fx_type, "filmtipset | twitter | planted")->required();
    fixture_cmd->add_option("--out", fx_out, "output directory")->required();
    fixture_cmd->add_option("--seed", fx_seed, "generator seed (default 1)");
    fixture_cmd->add_option("--users", fx_users, "user count (default 60)");
    fixture_cmd->add_option("--items", fx_items, "item count, filmtipset only (default 90)");
    fixture_cmd->add_option("--groups", fx_groups, "group count, filmtipset only (default 3)");
    fixture_cmd->add_option("--celebrities", fx_celebrities,
                            "celebrity count, twitter only (default 4)");
    fixture_cmd->callback([&] {
        commdet::Rng rng(fx_seed);
        if (fx_type == "filmtipset")
            commdet::write_filmtipset_fixture(fx_out, fx_users, fx_items, fx_groups, rng);
        else if (fx_type == "twitter")
            commdet::write_twitter_fixture(fx_out, fx_users, fx_celebrities, rng);
        else if (fx_type == "planted")
            commdet::write_planted_fixture(fx_out, fx_seed);
        else
            throw UsageError("unknown fixture type '" + fx_type +
                             "' (filmtipset | twitter | planted)");
        std::cerr << "fixture written to " << fx_out << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
