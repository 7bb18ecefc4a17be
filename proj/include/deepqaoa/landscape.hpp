#ifndef DEEPQAOA_LANDSCAPE_HPP_
#define DEEPQAOA_LANDSCAPE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "deepqaoa/objective.hpp"
#include "deepqaoa/statevector.hpp"

namespace deepqaoa {

/// Raised when a valley-size bound is requested at a string with mu <= 0.
class NotAValleyError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Average signed difference f(z') - f(z) over the N Hamming neighbours z' of z.
double mu(const ObjectiveTable& table, BitString z);

/// mu for every string, indexed by z.
std::vector<double> mu_all(const ObjectiveTable& table);

/// mu(z) / ||c||_inf. Throws std::invalid_argument for constant f.
double mu_tilde(const ObjectiveTable& table, BitString z);

/// Valley radius bound mu_tilde(z) / (2N), in trace distance. Throws NotAValleyError if mu(z) <= 0.
double epsilon_bound(const ObjectiveTable& table, BitString z);

/// Operator-norm bound 4 N^2 ||c||_inf on the second-derivative operator.
double f2b_norm_bound(const ObjectiveTable& table);

/// Applies the second-derivative operator F2 = -[B,[B,H]] to a real vector. Its expectation in
/// any state is hess_B; its diagonal at |z> is 2 N mu(z).
void apply_f2b(const ObjectiveTable& table, std::span<const double> in, std::span<double> out);

/// Power-iteration estimate of ||F2||_inf; non-decreasing in iters and never above f2b_norm_bound.
double f2b_norm_estimate(const ObjectiveTable& table, int iters);

/// 2 N mu(z) / f2b_norm_estimate. Throws NotAValleyError if mu(z) <= 0.
double epsilon_bound_tight(const ObjectiveTable& table, BitString z, int iters);

inline constexpr double kDefaultGradTol = 1e-9;
inline constexpr double kDefaultHessTol = 0.0;

/// |grad_B| < grad_tol and hess_B > hess_tol.
bool trough_membership(const StateVector& state, const ObjectiveTable& table, double grad_tol = kDefaultGradTol,
                       double hess_tol = kDefaultHessTol);

struct MuFPoint {
    BitString z;
    double f_val;
    double mu;
    double mu_tilde;   // 0 for constant f
    double eps_bound;  // mu_tilde / (2N) when mu > 0, else 0
};

MuFPoint mu_f_point(const ObjectiveTable& table, BitString z);

/// Largest N for which mu_f_diagram enumerates every string.
inline constexpr int kExhaustiveDiagramMaxBits = 20;

/// Exhaustive diagram when sample_size is empty (requires N <= kExhaustiveDiagramMaxBits);
/// otherwise sample_size distinct strings drawn uniformly, reported in increasing z.
std::vector<MuFPoint> mu_f_diagram(const ObjectiveTable& table, std::optional<std::size_t> sample_size = std::nullopt,
                                   std::uint64_t seed = 0);

inline constexpr int kHistogramBins = 64;

struct DiagramStats {
    double frac_mu_positive = 0.0;
    double pearson_f_mu = 0.0;
    bool correlation_degenerate = false;
    BitString argmax_mu{0, 1};
    double max_mu = 0.0;
    bool deepest_is_largest = false;
    double f_lo = 0.0, f_hi = 0.0, mu_lo = 0.0, mu_hi = 0.0;
    // counts[i * kHistogramBins + j]: f bin i, mu bin j
    std::vector<std::uint32_t> histogram;
};

DiagramStats diagram_stats(std::span<const MuFPoint> points, std::span<const BitString> argmin_set);

/// CSV columns z_decimal, f, mu, mu_tilde, eps_bound.
void write_diagram_csv(std::ostream& out, std::span<const MuFPoint> points);

}  // namespace deepqaoa

#endif  // DEEPQAOA_LANDSCAPE_HPP_
