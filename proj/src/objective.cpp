#include "deepqaoa/objective.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "deepqaoa/detail/summation.hpp"

namespace deepqaoa {

BitString::BitString(std::uint64_t value, int n_bits) : value_(static_cast<std::uint32_t>(value)), n_bits_(n_bits) {
    check_n_bits(n_bits);
    if (value >= (std::uint64_t{1} << n_bits)) {
        throw std::out_of_range("bit string value " + std::to_string(value) + " does not fit in " +
                                std::to_string(n_bits) + " bits");
    }
}

BitString BitString::complement() const {
    return BitString(~value_ & ((std::uint32_t{1} << n_bits_) - 1), n_bits_);
}

int BitString::popcount() const { return std::popcount(value_); }

int hamming_distance(BitString a, BitString b) {
    if (a.n_bits() != b.n_bits()) throw std::invalid_argument("hamming_distance: length mismatch");
    return std::popcount(a.value() ^ b.value());
}

void check_n_bits(int n_bits) {
    if (n_bits < 1 || n_bits > kMaxBits) {
        throw std::invalid_argument("n_bits must be in [1, " + std::to_string(kMaxBits) + "], got " +
                                    std::to_string(n_bits));
    }
}

std::string_view to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::custom: return "custom";
        case ObjectiveKind::uniform: return "uniform";
        case ObjectiveKind::bimodal: return "bimodal";
        case ObjectiveKind::qubo: return "qubo";
        case ObjectiveKind::maxcut: return "maxcut";
        case ObjectiveKind::constant: return "constant";
    }
    throw std::invalid_argument("unknown objective kind");
}

ObjectiveKind objective_kind_from_string(std::string_view name) {
    for (auto kind : {ObjectiveKind::custom, ObjectiveKind::uniform, ObjectiveKind::bimodal, ObjectiveKind::qubo,
                      ObjectiveKind::maxcut, ObjectiveKind::constant}) {
        if (to_string(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown objective kind '" + std::string(name) + "'");
}

ObjectiveTable::ObjectiveTable(int n_bits, std::vector<double> values, ObjectiveKind kind, std::uint64_t seed)
    : n_bits_(n_bits), values_(std::move(values)), kind_(kind), seed_(seed) {
    check_n_bits(n_bits);
    if (values_.size() != (std::size_t{1} << n_bits)) {
        throw std::invalid_argument("objective table needs 2^N = " + std::to_string(std::size_t{1} << n_bits) +
                                    " values, got " + std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("objective values must be finite");
    }
    auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    f_min_ = *lo;
    f_max_ = *hi;
    sup_norm_ = std::max(std::abs(f_min_), std::abs(f_max_));
    mean_ = detail::pairwise_sum(values_.size(), [&](std::size_t i) { return values_[i]; }) /
            static_cast<double>(values_.size());
    for (std::size_t z = 0; z < values_.size(); ++z) {
        if (values_[z] == f_min_) argmin_set_.emplace_back(z, n_bits_);
    }
}

double ObjectiveTable::at(BitString z) const {
    if (z.n_bits() != n_bits_) throw std::invalid_argument("bit string length does not match table");
    return values_[z.index()];
}

TracelessObjective::TracelessObjective(const ObjectiveTable& table)
    : n_bits_(table.n_bits()), c_values_(table.size()), c_sup_norm_(0.0) {
    const double mean = table.mean();
    for (std::size_t z = 0; z < c_values_.size(); ++z) {
        c_values_[z] = table[z] - mean;
        c_sup_norm_ = std::max(c_sup_norm_, std::abs(c_values_[z]));
    }
}

TracelessObjective traceless(const ObjectiveTable& table) { return TracelessObjective(table); }

ObjectiveTable normalize_sup(const ObjectiveTable& table) {
    const double norm = table.sup_norm();
    if (norm == 0.0) throw std::invalid_argument("normalize_sup: all-zero table");
    if (norm == 1.0) return table;
    std::vector<double> values(table.values().begin(), table.values().end());
    for (double& v : values) v /= norm;
    return ObjectiveTable(table.n_bits(), std::move(values), table.kind(), table.seed());
}

Graph make_graph(int n_vertices, std::vector<std::pair<int, int>> edges) {
    if (n_vertices < 0) throw std::invalid_argument("graph: negative vertex count");
    for (auto& [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n_vertices || j >= n_vertices) {
            throw std::invalid_argument("graph: edge (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") out of range");
        }
        if (i == j) throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(i));
        if (i > j) std::swap(i, j);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw std::invalid_argument("graph: duplicate edge");
    }
    return Graph{n_vertices, std::move(edges)};
}

namespace {

void check_interval(double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("value range must satisfy lo < hi");
    }
}

}  // namespace

ObjectiveTable gen_uniform(int n_bits, std::uint64_t seed, double lo, double hi) {
    check_n_bits(n_bits);
    check_interval(lo, hi);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> values(std::size_t{1} << n_bits);
    for (double& v : values) v = dist(rng);
    return ObjectiveTable(n_bits, std::move(values), ObjectiveKind::uniform, seed);
}

ObjectiveTable gen_bimodal(int n_bits, std::uint64_t seed, double lo, double hi) {
    check_n_bits(n_bits);
    check_interval(lo, hi);
    const double band = 0.2 * (hi - lo);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution upper(0.5);
    std::uniform_real_distribution<double> low_band(lo, lo + band);
    std::uniform_real_distribution<double> high_band(hi - band, hi);
    std::vector<double> values(std::size_t{1} << n_bits);
    for (double& v : values) v = upper(rng) ? high_band(rng) : low_band(rng);
    return ObjectiveTable(n_bits, std::move(values), ObjectiveKind::bimodal, seed);
}

std::vector<double> random_qubo_matrix(int n_bits, std::uint64_t seed) {
    check_n_bits(n_bits);
    const auto n = static_cast<Eigen::Index>(n_bits);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = normal(rng);
    Eigen::MatrixXd m = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
    const double norm = eig.eigenvalues().cwiseAbs().maxCoeff();
    m /= norm;
    std::vector<double> out(static_cast<std::size_t>(n * n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out[static_cast<std::size_t>(i * n + j)] = m(i, j);
    return out;
}

ObjectiveTable qubo_from_matrix(int n_bits, std::span<const double> matrix, ObjectiveKind kind, std::uint64_t seed) {
    check_n_bits(n_bits);
    const auto n = static_cast<std::size_t>(n_bits);
    if (matrix.size() != n * n) throw std::invalid_argument("qubo matrix must be n_bits x n_bits");
    std::vector<double> values(std::size_t{1} << n_bits);
    std::vector<std::size_t> ones;
    for (std::size_t z = 0; z < values.size(); ++z) {
        ones.clear();
        for (std::size_t i = 0; i < n; ++i)
            if ((z >> i) & 1u) ones.push_back(i);
        double s = 0.0;
        for (std::size_t i : ones)
            for (std::size_t j : ones) s += matrix[i * n + j];
        values[z] = s;
    }
    return ObjectiveTable(n_bits, std::move(values), kind, seed);
}

ObjectiveTable gen_qubo(int n_bits, std::uint64_t seed) {
    auto m = random_qubo_matrix(n_bits, seed);
    return qubo_from_matrix(n_bits, m, ObjectiveKind::qubo, seed);
}

ObjectiveTable gen_maxcut(const Graph& graph) {
    check_n_bits(graph.n_vertices);
    std::vector<double> values(std::size_t{1} << graph.n_vertices);
    for (std::size_t z = 0; z < values.size(); ++z) {
        int cut = 0;
        for (auto [i, j] : graph.edges) cut += static_cast<int>(((z >> i) ^ (z >> j)) & 1u);
        values[z] = -static_cast<double>(cut);
    }
    return ObjectiveTable(graph.n_vertices, std::move(values), ObjectiveKind::maxcut);
}

Graph gen_random_graph(int n_vertices, double edge_prob, std::uint64_t seed) {
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw std::invalid_argument("edge_prob must be in [0, 1]");
    if (n_vertices < 0) throw std::invalid_argument("graph: negative vertex count");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(edge_prob);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n_vertices; ++i)
        for (int j = i + 1; j < n_vertices; ++j)
            if (keep(rng)) edges.emplace_back(i, j);
    return Graph{n_vertices, std::move(edges)};
}

ObjectiveTable gen_constant(int n_bits, double value) {
    check_n_bits(n_bits);
    return ObjectiveTable(n_bits, std::vector<double>(std::size_t{1} << n_bits, value), ObjectiveKind::constant);
}

// ---- serialization ----

void write_table_csv(std::ostream& out, const ObjectiveTable& table) {
    std::ostringstream body;
    body.precision(17);
    body << "n_bits,kind,seed\n" << table.n_bits() << ',' << to_string(table.kind()) << ',' << table.seed() << '\n';
    body << "z,f\n";
    for (std::size_t z = 0; z < table.size(); ++z) body << z << ',' << table[z] << '\n';
    out << body.str();
}

ObjectiveTable read_table_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "n_bits,kind,seed") throw std::runtime_error("table csv: bad header");
    if (!std::getline(in, line)) throw std::runtime_error("table csv: missing metadata line");
    std::istringstream meta(line);
    std::string n_str, kind_str, seed_str;
    std::getline(meta, n_str, ',');
    std::getline(meta, kind_str, ',');
    std::getline(meta, seed_str, ',');
    const int n_bits = std::stoi(n_str);
    check_n_bits(n_bits);
    const auto kind = objective_kind_from_string(kind_str);
    const auto seed = std::stoull(seed_str);
    if (!std::getline(in, line) || line != "z,f") throw std::runtime_error("table csv: missing z,f header");
    std::vector<double> values(std::size_t{1} << n_bits);
    for (std::size_t expected = 0; expected < values.size(); ++expected) {
        if (!std::getline(in, line)) throw std::runtime_error("table csv: truncated");
        auto comma = line.find(',');
        if (comma == std::string::npos || std::stoull(line.substr(0, comma)) != expected) {
            throw std::runtime_error("table csv: rows must be in index order");
        }
        values[expected] = std::stod(line.substr(comma + 1));
    }
    return ObjectiveTable(n_bits, std::move(values), kind, seed);
}

namespace {

constexpr char kMagic[4] = {'D', 'Q', 'O', 'T'};
constexpr std::uint32_t kBinaryVersion = 1;

template <class U>
void put_le(std::ostream& out, U v) {
    char bytes[sizeof(U)];
    for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    out.write(bytes, sizeof(U));
}

template <class U>
U get_le(std::istream& in) {
    unsigned char bytes[sizeof(U)];
    if (!in.read(reinterpret_cast<char*>(bytes), sizeof(U))) throw std::runtime_error("table binary: truncated");
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
    return v;
}

}  // namespace

void write_table_binary(std::ostream& out, const ObjectiveTable& table) {
    out.write(kMagic, 4);
    put_le<std::uint32_t>(out, kBinaryVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.n_bits()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.kind()));
    put_le<std::uint64_t>(out, table.seed());
    for (double v : table.values()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
}

ObjectiveTable read_table_binary(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw std::runtime_error("table binary: bad magic");
    if (get_le<std::uint32_t>(in) != kBinaryVersion) throw std::runtime_error("table binary: unsupported version");
    const auto n_bits = static_cast<int>(get_le<std::uint32_t>(in));
    check_n_bits(n_bits);
    const auto kind_raw = get_le<std::uint32_t>(in);
    if (kind_raw > static_cast<std::uint32_t>(ObjectiveKind::constant)) {
        throw std::runtime_error("table binary: unknown kind");
    }
    const auto seed = get_le<std::uint64_t>(in);
    std::vector<double> values(std::size_t{1} << n_bits);
    for (double& v : values) v = std::bit_cast<double>(get_le<std::uint64_t>(in));
    return ObjectiveTable(n_bits, std::move(values), static_cast<ObjectiveKind>(kind_raw), seed);
}

void write_graph(std::ostream& out, const Graph& graph) {
    out << "# n_vertices " << graph.n_vertices << '\n';
    for (auto [i, j] : graph.edges) out << i << ' ' << j << '\n';
}

Graph read_graph(std::istream& in) {
    int n_vertices = -1;
    int max_vertex = -1;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream header(line.substr(1));
            std::string key;
            int value = 0;
            if (header >> key >> value && key == "n_vertices") n_vertices = value;
            continue;
        }
        std::istringstream row(line);
        int i = 0, j = 0;
        if (!(row >> i >> j)) throw std::runtime_error("graph: malformed edge line '" + line + "'");
        edges.emplace_back(i, j);
        max_vertex = std::max({max_vertex, i, j});
    }
    if (n_vertices < 0) n_vertices = max_vertex + 1;
    return make_graph(n_vertices, std::move(edges));
}

}  // namespace deepqaoa
