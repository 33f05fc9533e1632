#include "commdet/bench.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "commdet/hier_cluster.hpp"
#include "commdet/struct_detect.hpp"

namespace commdet {

AlgorithmCode parse_algorithm_code(const std::string& raw) {
    std::string code;
    for (char c : raw) code.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    using F = AlgorithmCode::Family;
    static const std::map<std::string, std::pair<F, std::optional<VectorKind>>> table = {
        {"LMM", {F::lmm, std::nullopt}},
        {"LMMS", {F::lmm, VectorKind::interest}},
        {"LMMR", {F::lmm, VectorKind::rating}},
        {"L", {F::louvain, std::nullopt}},
        {"ML", {F::modified_louvain, std::nullopt}},
        {"MLS", {F::modified_louvain, VectorKind::interest}},
        {"MLR", {F::modified_louvain, VectorKind::rating}},
        {"GN", {F::girvan_newman, std::nullopt}},
        {"S", {F::single_linkage, std::nullopt}},
        {"SS", {F::single_linkage, VectorKind::interest}},
        {"SR", {F::single_linkage, VectorKind::rating}},
        {"A", {F::average_linkage, std::nullopt}},
        {"AS", {F::average_linkage, VectorKind::interest}},
        {"AR", {F::average_linkage, VectorKind::rating}},
        {"C", {F::complete_linkage, std::nullopt}},
        {"CS", {F::complete_linkage, VectorKind::interest}},
        {"CR", {F::complete_linkage, VectorKind::rating}},
    };
    auto it = table.find(code);
    if (it == table.end()) throw std::invalid_argument("unknown algorithm code '" + raw + "'");
    AlgorithmCode out;
    out.code = code;
    out.family = it->second.first;
    out.vectors = it->second.second;
    return out;
}

std::vector<AlgorithmCode> parse_algorithm_codes(const std::string& csv) {
    std::vector<AlgorithmCode> codes;
    std::set<std::string> seen;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string token = csv.substr(start, comma == std::string::npos ? comma : comma - start);
        start = comma == std::string::npos ? csv.size() + 1 : comma + 1;
        std::size_t b = token.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        std::size_t e = token.find_last_not_of(" \t");
        AlgorithmCode code = parse_algorithm_code(token.substr(b, e - b + 1));
        if (seen.insert(code.code).second) codes.push_back(std::move(code));
    }
    return codes;
}

namespace {

// Replays a dendrogram from singletons upward, maintaining both modularity
// variants and the like-mindedness accumulator, and appends one row per
// level (k descending). Returns the level with the highest newman score,
// ties keeping the larger k.
int hierarchy_rows(const std::string& code, const Graph& g, const SimMatrix& s,
                   const Dendrogram& d, MetricSeries& out) {
    const int n = d.leaf_count;
    const double m = static_cast<double>(g.edge_count());
    std::vector<std::int64_t> internal(n, 0), degree(n);
    std::vector<std::vector<int>> members(n);
    std::vector<int> assign(n);
    for (int v = 0; v < n; ++v) {
        degree[v] = g.degree(v);
        members[v] = {v};
        assign[v] = v;
    }

    auto q_newman_term = [&](int c) {
        double a = static_cast<double>(internal[c]) / m;
        double b = static_cast<double>(degree[c]) / (2.0 * m);
        return a - b * b;
    };
    auto q_literal_term = [&](int c) {
        double a = static_cast<double>(internal[c]) / m;
        double b = static_cast<double>(degree[c] - internal[c]) / m;
        return a - b * b;
    };

    long double q_newman = 0.0L, q_literal = 0.0L, intra_sum = 0.0L;
    std::int64_t intra_pairs = 0;
    for (int v = 0; v < n; ++v) {
        q_newman += q_newman_term(v);
        q_literal += q_literal_term(v);
    }

    int best_k = n;
    double best_q = static_cast<double>(q_newman);
    auto push_row = [&](int k) {
        double like = intra_pairs > 0 ? static_cast<double>(intra_sum / intra_pairs) : 0.0;
        out.rows.push_back({code, k, static_cast<double>(q_newman),
                            static_cast<double>(q_literal), like});
        if (static_cast<double>(q_newman) > best_q) {
            best_q = static_cast<double>(q_newman);
            best_k = k;
        }
    };
    push_row(n);

    int k = n;
    for (const MergeStep& step : d.steps) {
        if (step.merged != step.a)
            throw std::logic_error("dendrogram step does not merge into its smaller id");
        int a = step.a, b = step.b;
        q_newman -= q_newman_term(a) + q_newman_term(b);
        q_literal -= q_literal_term(a) + q_literal_term(b);

        std::int64_t cross_edges = 0;
        long double cross_sims = 0.0L;
        for (int v : members[b]) {
            for (int u : g.neighbors(v))
                if (assign[u] == a) ++cross_edges;
            for (int u : members[a]) cross_sims += s(v, u);
        }
        internal[a] += internal[b] + cross_edges;
        degree[a] += degree[b];
        intra_pairs += static_cast<std::int64_t>(members[a].size()) *
                       static_cast<std::int64_t>(members[b].size());
        intra_sum += cross_sims;
        for (int v : members[b]) assign[v] = a;
        members[a].insert(members[a].end(), members[b].begin(), members[b].end());
        members[b].clear();

        q_newman += q_newman_term(a);
        q_literal += q_literal_term(a);
        push_row(--k);
    }
    return best_k;
}

Linkage linkage_of(AlgorithmCode::Family family) {
    switch (family) {
        case AlgorithmCode::Family::single_linkage: return Linkage::single;
        case AlgorithmCode::Family::average_linkage: return Linkage::average;
        case AlgorithmCode::Family::complete_linkage: return Linkage::complete;
        default: throw std::logic_error("not a linkage family");
    }
}

}  // namespace

SweepResult sweep(const SweepInputs& in, const std::vector<AlgorithmCode>& codes,
                  const SweepOptions& opts) {
    if (!in.graph) throw std::invalid_argument("sweep requires a graph");
    const Graph& g = *in.graph;
    if (g.edge_count() == 0)
        throw std::invalid_argument("sweep requires a graph with at least one edge");
    if (in.sims.empty())
        throw std::invalid_argument("sweep requires at least one similarity matrix");
    for (const auto& [kind, s] : in.sims)
        if (!s || s->size() != g.node_count())
            throw std::invalid_argument(std::string("similarity matrix for ") + to_string(kind) +
                                        " vectors does not match the graph");

    const std::uint64_t graph_hash = g.content_hash();
    std::map<VectorKind, std::uint64_t> sim_hashes;
    for (const auto& [kind, s] : in.sims) sim_hashes[kind] = s->content_hash();

    auto behavioral_sim = [&](const AlgorithmCode& code) -> const SimMatrix& {
        if (code.vectors) {
            auto it = in.sims.find(*code.vectors);
            if (it == in.sims.end())
                throw std::invalid_argument("code " + code.code + " requires " +
                                            to_string(*code.vectors) + " vectors");
            return *it->second;
        }
        if (auto it = in.sims.find(VectorKind::celebrity); it != in.sims.end())
            return *it->second;
        if (in.sims.size() == 1) return *in.sims.begin()->second;
        throw std::invalid_argument("code " + code.code +
                                    " is ambiguous: supply celebrity vectors or a single matrix");
    };
    auto eval_sim = [&]() -> const SimMatrix& {
        for (VectorKind kind :
             {VectorKind::interest, VectorKind::rating, VectorKind::celebrity})
            if (auto it = in.sims.find(kind); it != in.sims.end()) return *it->second;
        throw std::logic_error("no similarity matrix");  // sims checked non-empty
    };

    SweepResult res;
    std::set<std::string> seen;
    for (const AlgorithmCode& code : codes) {
        if (!seen.insert(code.code).second) continue;
        using F = AlgorithmCode::Family;
        switch (code.family) {
            case F::girvan_newman: {
                if (g.node_count() > 5000)
                    res.warnings.push_back(
                        "girvan-newman on " + std::to_string(g.node_count()) +
                        " nodes: expect long runtimes; the betweenness loop is quadratic-plus");
                Dendrogram d = girvan_newman(g);
                int best_k = hierarchy_rows(code.code, g, eval_sim(), d, res.series);
                res.best_partitions.emplace(code.code, cut(d, best_k));
                break;
            }
            case F::single_linkage:
            case F::average_linkage:
            case F::complete_linkage: {
                const SimMatrix& s = behavioral_sim(code);
                Dendrogram d = agglomerate(s, linkage_of(code.family));
                int best_k = hierarchy_rows(code.code, g, s, d, res.series);
                res.best_partitions.emplace(code.code, cut(d, best_k));
                break;
            }
            case F::lmm: {
                const SimMatrix& s = behavioral_sim(code);
                Dendrogram d = lmm_agglomerate(s);
                int best_k = hierarchy_rows(code.code, g, s, d, res.series);
                res.best_partitions.emplace(code.code, cut(d, best_k));
                break;
            }
            case F::louvain: {
                LouvainResult r = louvain(g, {opts.variant, false});
                MetricRow row;
                row.algorithm = code.code;
                row.k = r.partition.community_count();
                row.modularity_newman = modularity(g, r.partition, ModularityVariant::newman);
                row.modularity_literal =
                    modularity(g, r.partition, ModularityVariant::paper_literal);
                row.like_mindedness = like_mindedness(eval_sim(), r.partition);
                res.series.rows.push_back(std::move(row));
                res.best_partitions.emplace(code.code, std::move(r.partition));
                break;
            }
            case F::modified_louvain: {
                const SimMatrix& s = behavioral_sim(code);
                ModifiedLouvainResult r = modified_louvain(g, s, {opts.variant, false});
                MetricRow row;
                row.algorithm = code.code;
                row.k = r.partition.community_count();
                row.modularity_newman = r.modularity_original_newman;
                row.modularity_literal = r.modularity_original_literal;
                row.like_mindedness = r.like_mindedness;
                res.series.rows.push_back(std::move(row));
                res.best_partitions.emplace(code.code, std::move(r.partition));
                break;
            }
        }
    }

    bool dirty = g.content_hash() != graph_hash;
    for (const auto& [kind, s] : in.sims) dirty = dirty || s->content_hash() != sim_hashes[kind];
    if (dirty) throw std::logic_error("sweep inputs were mutated during the run");
    return res;
}

std::string metrics_csv(const MetricSeries& series) {
    std::ostringstream out;
    out << "algorithm,k,modularity_newman,modularity_literal,like_mindedness\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const MetricRow& r : series.rows)
        out << r.algorithm << ',' << r.k << ',' << r.modularity_newman << ','
            << r.modularity_literal << ',' << r.like_mindedness << '\n';
    return out.str();
}

namespace {

double parse_double_field(const std::string& field, int line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw std::runtime_error("metrics csv line " + std::to_string(line_no) +
                                 ": bad number '" + field + "'");
    return value;
}

}  // namespace

MetricSeries parse_metrics_csv(std::istream& in) {
    MetricSeries series;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line))
        throw std::runtime_error("metrics csv: empty input");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "algorithm,k,modularity_newman,modularity_literal,like_mindedness")
        throw std::runtime_error("metrics csv: unexpected header '" + line + "'");
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() != 5)
            throw std::runtime_error("metrics csv line " + std::to_string(line_no) +
                                     ": expected 5 fields");
        MetricRow row;
        row.algorithm = fields[0];
        {
            const char* first = fields[1].data();
            const char* last = first + fields[1].size();
            auto [ptr, ec] = std::from_chars(first, last, row.k);
            if (ec != std::errc() || ptr != last)
                throw std::runtime_error("metrics csv line " + std::to_string(line_no) +
                                         ": bad k '" + fields[1] + "'");
        }
        row.modularity_newman = parse_double_field(fields[2], line_no);
        row.modularity_literal = parse_double_field(fields[3], line_no);
        row.like_mindedness = parse_double_field(fields[4], line_no);
        series.rows.push_back(std::move(row));
    }
    return series;
}

MetricSeries parse_metrics_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_metrics_csv(in);
}

std::string max_modularity_report(const MetricSeries& series) {
    if (series.rows.empty())
        throw std::invalid_argument("max modularity report: empty series");
    std::vector<std::string> order;
    std::map<std::string, std::pair<double, double>> best;
    for (const MetricRow& r : series.rows) {
        auto it = best.find(r.algorithm);
        if (it == best.end()) {
            order.push_back(r.algorithm);
            best.emplace(r.algorithm, std::make_pair(r.modularity_newman, r.modularity_literal));
        } else {
            it->second.first = std::max(it->second.first, r.modularity_newman);
            it->second.second = std::max(it->second.second, r.modularity_literal);
        }
    }
    std::ostringstream out;
    out << std::left << std::setw(12) << "algorithm" << std::right << std::setw(22)
        << "max_modularity_newman" << std::setw(24) << "max_modularity_literal" << '\n';
    out << std::setprecision(6) << std::fixed;
    for (const std::string& algorithm : order) {
        const auto& [newman, literal] = best.at(algorithm);
        out << std::left << std::setw(12) << algorithm << std::right << std::setw(22) << newman
            << std::setw(24) << literal << '\n';
    }
    return out.str();
}

namespace {

const char* column_name(MetricColumn column) {
    switch (column) {
        case MetricColumn::modularity_newman: return "modularity_newman";
        case MetricColumn::modularity_literal: return "modularity_literal";
        case MetricColumn::like_mindedness: return "like_mindedness";
    }
    return "?";
}

double column_value(const MetricRow& row, MetricColumn column) {
    switch (column) {
        case MetricColumn::modularity_newman: return row.modularity_newman;
        case MetricColumn::modularity_literal: return row.modularity_literal;
        case MetricColumn::like_mindedness: return row.like_mindedness;
    }
    return 0.0;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string metric_plot_svg(const MetricSeries& series, MetricColumn column) {
    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    constexpr int kPaletteSize = 8;
    // Per-algorithm point lists in first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> points;
    double k_min = 0, k_max = 1, v_min = 0, v_max = 1;
    bool first = true;
    for (const MetricRow& r : series.rows) {
        double v = column_value(r, column);
        if (!std::isfinite(v))
            throw std::invalid_argument("metric plot: non-finite value in series");
        if (points.find(r.algorithm) == points.end()) order.push_back(r.algorithm);
        points[r.algorithm].emplace_back(static_cast<double>(r.k), v);
        if (first) {
            k_min = k_max = r.k;
            v_min = v_max = v;
            first = false;
        } else {
            k_min = std::min(k_min, static_cast<double>(r.k));
            k_max = std::max(k_max, static_cast<double>(r.k));
            v_min = std::min(v_min, v);
            v_max = std::max(v_max, v);
        }
    }
    if (k_min == k_max) {
        k_min -= 1.0;
        k_max += 1.0;
    }
    if (v_min == v_max) {
        v_min -= 0.5;
        v_max += 0.5;
    }

    const double left = 80, right = 770, top = 50, bottom = 440;
    auto sx = [&](double k) { return left + (k - k_min) / (k_max - k_min) * (right - left); };
    auto sy = [&](double v) { return bottom - (v - v_min) / (v_max - v_min) * (bottom - top); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    out << "<text x=\"400\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" "
           "text-anchor=\"middle\">"
        << column_name(column) << " vs community count</text>\n";
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
        << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(right)
        << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double k = k_min + (k_max - k_min) * t / 4.0;
        double v = v_min + (v_max - v_min) * t / 4.0;
        out << "<line x1=\"" << fmt(sx(k)) << "\" y1=\"" << fmt(bottom) << "\" x2=\""
            << fmt(sx(k)) << "\" y2=\"" << fmt(bottom + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(sx(k)) << "\" y=\"" << fmt(bottom + 20)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << fmt_tick(k) << "</text>\n";
        out << "<line x1=\"" << fmt(left - 5) << "\" y1=\"" << fmt(sy(v)) << "\" x2=\""
            << fmt(left) << "\" y2=\"" << fmt(sy(v)) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(sy(v) + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            << fmt_tick(v) << "</text>\n";
    }
    out << "<text x=\"425\" y=\"480\" font-family=\"sans-serif\" font-size=\"13\" "
           "text-anchor=\"middle\">communities (k)</text>\n";

    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& pts = points[order[i]];
        const char* color = kPalette[i % kPaletteSize];
        if (pts.size() >= 2) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
                   "points=\"";
            for (const auto& [k, v] : pts) out << fmt(sx(k)) << ',' << fmt(sy(v)) << ' ';
            out << "\"/>\n";
        }
        if (pts.size() <= 40)
            for (const auto& [k, v] : pts)
                out << "<circle cx=\"" << fmt(sx(k)) << "\" cy=\"" << fmt(sy(v))
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }

    for (std::size_t i = 0; i < order.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        double y = 60 + 18 * static_cast<double>(i);
        out << "<line x1=\"660\" y1=\"" << fmt(y - 4) << "\" x2=\"690\" y2=\"" << fmt(y - 4)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"696\" y=\"" << fmt(y)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << order[i] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

namespace {

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void emit_outputs(const SweepResult& result, const Graph& g, const NetworkStats& stats,
                  std::optional<double> homophily, const std::string& outdir) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(outdir) / "partitions");
    write_text_file(outdir + "/metrics.csv", metrics_csv(result.series));
    write_text_file(outdir + "/stats.txt", stats_table(stats, homophily));
    for (const auto& [code, partition] : result.best_partitions)
        write_text_file(outdir + "/partitions/" + code + ".json",
                        partition_json(code, g, partition) + "\n");
    write_text_file(outdir + "/modularity_newman.svg",
                    metric_plot_svg(result.series, MetricColumn::modularity_newman));
    write_text_file(outdir + "/modularity_literal.svg",
                    metric_plot_svg(result.series, MetricColumn::modularity_literal));
    write_text_file(outdir + "/like_mindedness.svg",
                    metric_plot_svg(result.series, MetricColumn::like_mindedness));
}

}  // namespace commdet
