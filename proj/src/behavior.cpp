#include "commdet/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace commdet {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr char kCacheMagic[8] = {'S', 'I', 'M', 'C', 'A', 'C', 'H', 'E'};
constexpr std::uint32_t kCacheVersion = 1;

}  // namespace

const char* to_string(VectorKind kind) {
    switch (kind) {
        case VectorKind::rating: return "rating";
        case VectorKind::interest: return "interest";
        case VectorKind::celebrity: return "celebrity";
    }
    return "?";
}

std::optional<VectorKind> vector_kind_from_string(const std::string& name) {
    if (name == "rating") return VectorKind::rating;
    if (name == "interest") return VectorKind::interest;
    if (name == "celebrity") return VectorKind::celebrity;
    return std::nullopt;
}

double SparseVec::norm() const {
    double s = 0.0;
    for (auto [i, x] : entries) s += x * x;
    return std::sqrt(s);
}

double SparseVec::dot(const SparseVec& other) const {
    double s = 0.0;
    auto a = entries.begin();
    auto b = other.entries.begin();
    while (a != entries.end() && b != other.entries.end()) {
        if (a->first < b->first) {
            ++a;
        } else if (b->first < a->first) {
            ++b;
        } else {
            s += a->second * b->second;
            ++a;
            ++b;
        }
    }
    return s;
}

BehavioralMatrix::BehavioralMatrix(int node_count, int dimension, VectorKind kind)
    : dimension_(dimension), kind_(kind), rows_(node_count) {
    if (node_count <= 0 || dimension < 0)
        throw std::invalid_argument("behavioral matrix needs nodes and a non-negative dimension");
    for (auto& r : rows_) r.dim = dimension;
}

void BehavioralMatrix::set(int node, int index, double value) {
    if (node < 0 || node >= node_count())
        throw std::invalid_argument("behavioral matrix: node out of range");
    if (index < 0 || index >= dimension_)
        throw std::invalid_argument("behavioral matrix: index out of range");
    bool ok = kind_ == VectorKind::rating
                  ? (value == std::floor(value) && value >= 1.0 && value <= 5.0)
                  : (value == 1.0);
    if (!ok)
        throw std::invalid_argument("behavioral matrix: value out of range for kind");
    auto& e = rows_[node].entries;
    auto it = std::lower_bound(e.begin(), e.end(), index,
                               [](const auto& p, int i) { return p.first < i; });
    if (it != e.end() && it->first == index)
        it->second = value;
    else
        e.emplace(it, index, value);
}

std::uint64_t BehavioralMatrix::content_hash() const {
    std::uint64_t h = kFnvOffset;
    int n = node_count();
    int k = static_cast<int>(kind_);
    h = fnv1a(h, &n, sizeof n);
    h = fnv1a(h, &dimension_, sizeof dimension_);
    h = fnv1a(h, &k, sizeof k);
    for (const auto& row : rows_)
        for (auto [i, x] : row.entries) {
            h = fnv1a(h, &i, sizeof i);
            h = fnv1a(h, &x, sizeof x);
        }
    return h;
}

double cosine_similarity(const SparseVec& x, const SparseVec& y) {
    if (x.dim != y.dim)
        throw std::invalid_argument("cosine similarity: dimension mismatch");
    double nx = x.norm(), ny = y.norm();
    if (nx == 0.0 || ny == 0.0) return 0.0;
    return x.dot(y) / (nx * ny);
}

double cosine_similarity(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("cosine similarity: dimension mismatch");
    double dot = 0.0, nx = 0.0, ny = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += x[i] * y[i];
        nx += x[i] * x[i];
        ny += y[i] * y[i];
    }
    if (nx == 0.0 || ny == 0.0) return 0.0;
    return dot / (std::sqrt(nx) * std::sqrt(ny));
}

SimMatrix::SimMatrix(int size) : size_(size) {
    if (size <= 0)
        throw std::invalid_argument("similarity matrix needs at least one node");
    values_.assign(static_cast<std::size_t>(size) * (size - 1) / 2, 0.0);
}

SimMatrix::SimMatrix(int size, std::vector<double> packed) : size_(size), values_(std::move(packed)) {
    if (size <= 0 || values_.size() != static_cast<std::size_t>(size) * (size - 1) / 2)
        throw std::invalid_argument("similarity matrix: packed size mismatch");
}

std::size_t SimMatrix::pack_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(u) * size_ - static_cast<std::size_t>(u) * (u + 1) / 2 +
           (v - u - 1);
}

void SimMatrix::set(int u, int v, double value) {
    if (u == v)
        throw std::invalid_argument("similarity matrix: diagonal is fixed at 1");
    values_[pack_index(u, v)] = value;
}

std::uint64_t SimMatrix::content_hash() const {
    std::uint64_t h = kFnvOffset;
    h = fnv1a(h, &size_, sizeof size_);
    h = fnv1a(h, values_.data(), values_.size() * sizeof(double));
    return h;
}

SimMatrix similarity_matrix(const BehavioralMatrix& b) {
    int n = b.node_count();
    SimMatrix s(n);
    std::vector<double> norms(n);
    for (int v = 0; v < n; ++v) norms[v] = b.row(v).norm();
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            double value = 0.0;
            if (norms[u] != 0.0 && norms[v] != 0.0)
                value = b.row(u).dot(b.row(v)) / (norms[u] * norms[v]);
            s.set(u, v, value);
        }
    }
    return s;
}

double matrix_cosine(const SimMatrix& a, const SimMatrix& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("matrix cosine: size mismatch");
    return cosine_similarity(a.packed(), b.packed());
}

void write_sim_cache(const SimMatrix& s, VectorKind kind, std::uint64_t source_hash,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write similarity cache: " + path);
    out.write(kCacheMagic, sizeof kCacheMagic);
    std::uint32_t version = kCacheVersion;
    std::uint32_t k = static_cast<std::uint32_t>(kind);
    std::uint64_t n = static_cast<std::uint64_t>(s.size());
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&k), sizeof k);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&source_hash), sizeof source_hash);
    auto packed = s.packed();
    out.write(reinterpret_cast<const char*>(packed.data()),
              static_cast<std::streamsize>(packed.size() * sizeof(double)));
    if (!out)
        throw std::runtime_error("short write on similarity cache: " + path);
}

std::optional<SimMatrix> read_sim_cache(const std::string& path, std::uint64_t expected_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    std::uint32_t version = 0, kind = 0;
    std::uint64_t n = 0, hash = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&kind), sizeof kind);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&hash), sizeof hash);
    if (!in || std::memcmp(magic, kCacheMagic, sizeof magic) != 0 || version != kCacheVersion)
        return std::nullopt;
    if (hash != expected_hash || n == 0 || n > (1u << 24))
        return std::nullopt;
    std::vector<double> packed(n * (n - 1) / 2);
    in.read(reinterpret_cast<char*>(packed.data()),
            static_cast<std::streamsize>(packed.size() * sizeof(double)));
    if (!in) return std::nullopt;
    return SimMatrix(static_cast<int>(n), std::move(packed));
}

void write_vectors(const BehavioralMatrix& b, const std::vector<std::string>& node_labels,
                   std::ostream& out) {
    if (static_cast<int>(node_labels.size()) != b.node_count())
        throw std::invalid_argument("vector output: label count mismatch");
    out << "#kind " << to_string(b.kind()) << '\n';
    out << "#dimension " << b.dimension() << '\n';
    for (int v = 0; v < b.node_count(); ++v) {
        out << node_labels[v];
        for (auto [i, x] : b.row(v).entries) {
            out << ' ' << i << ':';
            if (x == std::floor(x))
                out << static_cast<long long>(x);
            else
                out << x;
        }
        out << '\n';
    }
}

void write_vectors_file(const BehavioralMatrix& b, const std::vector<std::string>& node_labels,
                        const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write vectors file: " + path);
    write_vectors(b, node_labels, out);
}

BehavioralMatrix read_vectors(std::istream& in, const std::vector<std::string>& node_labels) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < node_labels.size(); ++i)
        index.emplace(node_labels[i], static_cast<int>(i));

    std::string line;
    std::int64_t line_no = 0;
    std::optional<VectorKind> kind;
    int dimension = -1;
    std::vector<std::tuple<int, int, double>> cells;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == '#') {
            std::string tag;
            ls >> tag;
            if (tag == "#kind") {
                std::string name;
                ls >> name;
                kind = vector_kind_from_string(name);
                if (!kind)
                    throw std::runtime_error("vectors line " + std::to_string(line_no) +
                                             ": unknown kind '" + name + "'");
            } else if (tag == "#dimension") {
                if (!(ls >> dimension) || dimension < 0)
                    throw std::runtime_error("vectors line " + std::to_string(line_no) +
                                             ": bad dimension");
            }
            continue;
        }
        std::string label;
        ls >> label;
        auto it = index.find(label);
        if (it == index.end())
            throw std::runtime_error("vectors line " + std::to_string(line_no) +
                                     ": unknown node label '" + label + "'");
        std::string cell;
        while (ls >> cell) {
            auto colon = cell.find(':');
            if (colon == std::string::npos)
                throw std::runtime_error("vectors line " + std::to_string(line_no) +
                                         ": malformed entry '" + cell + "'");
            int idx = 0;
            double value = 0.0;
            try {
                idx = std::stoi(cell.substr(0, colon));
                value = std::stod(cell.substr(colon + 1));
            } catch (const std::exception&) {
                throw std::runtime_error("vectors line " + std::to_string(line_no) +
                                         ": malformed entry '" + cell + "'");
            }
            cells.emplace_back(it->second, idx, value);
        }
    }
    if (!kind || dimension < 0)
        throw std::runtime_error("vectors file: missing #kind or #dimension header");
    BehavioralMatrix b(static_cast<int>(node_labels.size()), dimension, *kind);
    for (auto [node, idx, value] : cells) b.set(node, idx, value);
    return b;
}

BehavioralMatrix read_vectors_file(const std::string& path,
                                   const std::vector<std::string>& node_labels) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open vectors file: " + path);
    return read_vectors(in, node_labels);
}

}  // namespace commdet
