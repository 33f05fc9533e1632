#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "commdet/behavior.hpp"
#include "commdet/graph.hpp"
#include "commdet/metrics.hpp"

namespace commdet {

/// Family + vector-suffix vocabulary of the benchmark codes:
///   LMM/LMMS/LMMR  like-mindedness maximization
///   L              louvain, ML/MLS/MLR modified louvain
///   GN             girvan-newman
///   S/SS/SR, A/AS/AR, C/CS/CR  single/average/complete linkage
/// Suffix R = rating vectors, S = interest vectors; a bare behavioral code
/// uses the celebrity vectors (or the only similarity matrix supplied).
struct AlgorithmCode {
    enum class Family {
        lmm,
        louvain,
        modified_louvain,
        girvan_newman,
        single_linkage,
        average_linkage,
        complete_linkage,
    };

    std::string code;
    Family family = Family::louvain;
    std::optional<VectorKind> vectors;  // empty: structural, or bare behavioral

    bool structural() const {
        return family == Family::louvain || family == Family::girvan_newman;
    }
    bool hierarchical() const {
        return family != Family::louvain && family != Family::modified_louvain;
    }
};

/// Throws std::invalid_argument on an unknown code.
AlgorithmCode parse_algorithm_code(const std::string& code);
/// Comma-separated list; duplicates collapse to the first occurrence.
std::vector<AlgorithmCode> parse_algorithm_codes(const std::string& csv);

struct MetricRow {
    std::string algorithm;
    int k = 0;
    double modularity_newman = 0.0;
    double modularity_literal = 0.0;
    double like_mindedness = 0.0;

    bool operator==(const MetricRow&) const = default;
};

/// Rows grouped by algorithm in request order, k descending within each.
struct MetricSeries {
    std::vector<MetricRow> rows;

    bool operator==(const MetricSeries&) const = default;
};

struct SweepInputs {
    const Graph* graph = nullptr;
    std::map<VectorKind, const SimMatrix*> sims;
};

struct SweepOptions {
    /// Gain measure driving the Louvain and Modified Louvain runs. Both
    /// modularity columns are always reported for every row.
    ModularityVariant variant = ModularityVariant::newman;
};

struct SweepResult {
    MetricSeries series;
    /// Per code: the partition at its highest-newman-modularity level (ties
    /// keep the larger k); for louvain/modified louvain, the terminal one.
    std::map<std::string, Partition> best_partitions;
    std::vector<std::string> warnings;
};

/// Runs every requested code over shared immutable inputs. Hierarchical
/// algorithms contribute one row per cut level (k from |V| down to the
/// hierarchy floor); louvain and modified louvain contribute their terminal
/// row only. Requires a graph with at least one edge and at least one
/// similarity matrix; behavioral codes need their suffix-selected matrix,
/// structural rows evaluate like-mindedness on the interest > rating >
/// celebrity priority choice. Inputs are content-hashed before and after.
SweepResult sweep(const SweepInputs& in, const std::vector<AlgorithmCode>& codes,
                  const SweepOptions& opts = {});

/// Header `algorithm,k,modularity_newman,modularity_literal,like_mindedness`;
/// values round-trip exactly through parse_metrics_csv.
std::string metrics_csv(const MetricSeries& series);
MetricSeries parse_metrics_csv(std::istream& in);
MetricSeries parse_metrics_csv_file(const std::string& path);

/// Per algorithm, the maximum of each modularity variant over all k.
std::string max_modularity_report(const MetricSeries& series);

enum class MetricColumn { modularity_newman, modularity_literal, like_mindedness };

/// Self-contained SVG line plot: community count on the x axis, one polyline
/// per algorithm, embedded legend.
std::string metric_plot_svg(const MetricSeries& series, MetricColumn column);

/// Writes metrics.csv, stats.txt, partitions/<code>.json, and one SVG plot
/// per metric column into `outdir`.
void emit_outputs(const SweepResult& result, const Graph& g, const NetworkStats& stats,
                  std::optional<double> homophily, const std::string& outdir);

}  // namespace commdet
