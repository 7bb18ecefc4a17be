#ifndef DEEPQAOA_OBJECTIVE_HPP_
#define DEEPQAOA_OBJECTIVE_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deepqaoa {

// Exhaustive tables are capped here; 2^24 doubles is 128 MiB.
inline constexpr int kMaxBits = 24;

/// A bit string z in {0,1}^N. Bit i of `value()` is z(i); bit 0 is qubit 0.
class BitString {
public:
    BitString(std::uint64_t value, int n_bits);

    std::uint32_t value() const { return value_; }
    int n_bits() const { return n_bits_; }
    std::size_t index() const { return value_; }

    bool bit(int i) const { return (value_ >> i) & 1u; }
    BitString flipped(int i) const { return BitString(value_ ^ (1u << i), n_bits_); }
    BitString complement() const;
    int popcount() const;

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString&, const BitString&) = default;

private:
    std::uint32_t value_;
    int n_bits_;
};

int hamming_distance(BitString a, BitString b);

/// Throws std::invalid_argument unless 1 <= n_bits <= kMaxBits.
void check_n_bits(int n_bits);

enum class ObjectiveKind : std::uint32_t { custom = 0, uniform = 1, bimodal = 2, qubo = 3, maxcut = 4, constant = 5 };

std::string_view to_string(ObjectiveKind kind);
ObjectiveKind objective_kind_from_string(std::string_view name);

/// Value table of a pseudo-Boolean f on all 2^N strings, with cached summary statistics.
class ObjectiveTable {
public:
    ObjectiveTable(int n_bits, std::vector<double> values, ObjectiveKind kind = ObjectiveKind::custom,
                   std::uint64_t seed = 0);

    int n_bits() const { return n_bits_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t z) const { return values_[z]; }
    double at(BitString z) const;

    double f_min() const { return f_min_; }
    double f_max() const { return f_max_; }
    double mean() const { return mean_; }
    double sup_norm() const { return sup_norm_; }
    /// Every z with f(z) == f_min, in increasing order. Never empty.
    const std::vector<BitString>& argmin_set() const { return argmin_set_; }
    bool is_optimal(std::size_t z) const { return values_[z] == f_min_; }

    ObjectiveKind kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }

private:
    int n_bits_;
    std::vector<double> values_;
    ObjectiveKind kind_;
    std::uint64_t seed_;
    double f_min_ = 0.0;
    double f_max_ = 0.0;
    double mean_ = 0.0;
    double sup_norm_ = 0.0;
    std::vector<BitString> argmin_set_;
};

/// c(z) = f(z) - mean(f); the diagonal of the traceless generator of the phase separator.
class TracelessObjective {
public:
    explicit TracelessObjective(const ObjectiveTable& table);

    int n_bits() const { return n_bits_; }
    std::size_t size() const { return c_values_.size(); }
    std::span<const double> values() const { return c_values_; }
    double operator[](std::size_t z) const { return c_values_[z]; }
    double sup_norm() const { return c_sup_norm_; }

private:
    int n_bits_;
    std::vector<double> c_values_;
    double c_sup_norm_;
};

TracelessObjective traceless(const ObjectiveTable& table);

/// Divides all values by the sup norm. Throws std::invalid_argument for an all-zero table.
ObjectiveTable normalize_sup(const ObjectiveTable& table);

struct Graph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted, unique
};

/// Validates endpoints, drops orientation and sorts; throws on self-loops or duplicates.
Graph make_graph(int n_vertices, std::vector<std::pair<int, int>> edges);

ObjectiveTable gen_uniform(int n_bits, std::uint64_t seed, double lo, double hi);

/// 50/50 mixture of U[lo, lo + 0.2 (hi - lo)] and U[hi - 0.2 (hi - lo), hi].
ObjectiveTable gen_bimodal(int n_bits, std::uint64_t seed, double lo, double hi);

/// f(z) = sum_ij z(i) M_ij z(j) for a random real symmetric M with unit spectral norm.
ObjectiveTable gen_qubo(int n_bits, std::uint64_t seed);

/// Evaluates the quadratic form of a caller-supplied row-major n x n matrix as-is.
ObjectiveTable qubo_from_matrix(int n_bits, std::span<const double> matrix, ObjectiveKind kind = ObjectiveKind::custom,
                                std::uint64_t seed = 0);

/// The symmetric, unit-norm matrix gen_qubo draws for (n_bits, seed), row-major.
std::vector<double> random_qubo_matrix(int n_bits, std::uint64_t seed);

/// f(z) = -(number of cut edges), so minimizing f maximizes the cut.
ObjectiveTable gen_maxcut(const Graph& graph);

Graph gen_random_graph(int n_vertices, double edge_prob, std::uint64_t seed);

ObjectiveTable gen_constant(int n_bits, double value);

// Serialization. CSV: "n_bits,kind,seed" header line, its values, then "z,f" rows in index order.
// Binary: "DQOT", u32 version, u32 n_bits, u32 kind, u64 seed, then 2^N little-endian doubles.
void write_table_csv(std::ostream& out, const ObjectiveTable& table);
ObjectiveTable read_table_csv(std::istream& in);
void write_table_binary(std::ostream& out, const ObjectiveTable& table);
ObjectiveTable read_table_binary(std::istream& in);

// Edge lists: optional "# n_vertices K" line, then one "i j" pair per line.
void write_graph(std::ostream& out, const Graph& graph);
Graph read_graph(std::istream& in);

}  // namespace deepqaoa

#endif  // DEEPQAOA_OBJECTIVE_HPP_
