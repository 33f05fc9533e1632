#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace commdet {

enum class VectorKind { rating, interest, celebrity };

const char* to_string(VectorKind kind);
std::optional<VectorKind> vector_kind_from_string(const std::string& name);

/// Sparse non-negative vector; entries sorted by index, values > 0.
struct SparseVec {
    int dim = 0;
    std::vector<std::pair<int, double>> entries;

    double norm() const;
    double dot(const SparseVec& other) const;
};

/// Per-node behavioral vectors of one fixed dimension.
/// Rating entries lie in {1..5} (0 = unrated, not stored); interest and
/// celebrity entries are {0,1} (only 1s stored).
class BehavioralMatrix {
public:
    BehavioralMatrix() = default;
    BehavioralMatrix(int node_count, int dimension, VectorKind kind);

    void set(int node, int index, double value);
    const SparseVec& row(int node) const { return rows_[node]; }

    int node_count() const { return static_cast<int>(rows_.size()); }
    int dimension() const { return dimension_; }
    VectorKind kind() const { return kind_; }

    std::uint64_t content_hash() const;

private:
    int dimension_ = 0;
    VectorKind kind_ = VectorKind::rating;
    std::vector<SparseVec> rows_;
};

/// sim(u,v) in [0,1], zero if either vector has zero norm.
/// Throws std::invalid_argument on dimension mismatch.
double cosine_similarity(const SparseVec& x, const SparseVec& y);
double cosine_similarity(std::span<const double> x, std::span<const double> y);

/// Symmetric pairwise similarity table; only u < v entries are stored.
/// sim(u,u) is defined as 1 but never stored.
class SimMatrix {
public:
    SimMatrix() = default;
    explicit SimMatrix(int size);
    SimMatrix(int size, std::vector<double> packed);

    int size() const { return size_; }
    double operator()(int u, int v) const {
        if (u == v) return 1.0;
        return values_[pack_index(u, v)];
    }
    void set(int u, int v, double value);

    /// Row-major u < v triangular store.
    std::span<const double> packed() const { return values_; }

    std::uint64_t content_hash() const;

private:
    std::size_t pack_index(int u, int v) const;
    int size_ = 0;
    std::vector<double> values_;
};

/// All (|V| choose 2) pairwise cosine similarities.
SimMatrix similarity_matrix(const BehavioralMatrix& b);

/// Cosine similarity of two matrices flattened over their u < v entries.
double matrix_cosine(const SimMatrix& a, const SimMatrix& b);

/// Binary SimMatrix cache keyed by the content hash of the source
/// BehavioralMatrix. Layout: magic, version, kind, size, source hash, then
/// the packed triangular doubles.
void write_sim_cache(const SimMatrix& s, VectorKind kind, std::uint64_t source_hash,
                     const std::string& path);
/// Empty when the file is missing, malformed, or keyed by a different hash.
std::optional<SimMatrix> read_sim_cache(const std::string& path, std::uint64_t expected_hash);

/// Behavioral-vector text format:
///   #kind rating|interest|celebrity
///   #dimension <d>
///   <node-label> <index>:<value> <index>:<value> ...
/// Nodes follow the companion graph's label order; absent nodes get zero
/// vectors on read.
void write_vectors(const BehavioralMatrix& b, const std::vector<std::string>& node_labels,
                   std::ostream& out);
void write_vectors_file(const BehavioralMatrix& b, const std::vector<std::string>& node_labels,
                        const std::string& path);
BehavioralMatrix read_vectors(std::istream& in, const std::vector<std::string>& node_labels);
BehavioralMatrix read_vectors_file(const std::string& path,
                                   const std::vector<std::string>& node_labels);

}  // namespace commdet
