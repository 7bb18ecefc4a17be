#ifndef DEEPQAOA_UNIVERSALITY_HPP_
#define DEEPQAOA_UNIVERSALITY_HPP_

#include <cstdint>
#include <iosfwd>
#include <utility>

#include "deepqaoa/objective.hpp"

namespace deepqaoa {

enum class SeveringViolation { none, degenerate_values, degenerate_resonance };

/// Ordered pair (z, z') standing for the difference f(z) - f(z').
using StringPair = std::pair<std::uint32_t, std::uint32_t>;

struct SeveringReport {
    bool severing = true;
    SeveringViolation violation = SeveringViolation::none;
    // degenerate_values: f(first.first) == f(first.second).
    // degenerate_resonance: f(first) difference == f(second) difference.
    StringPair first{0, 0};
    StringPair second{0, 0};
    double tolerance = 0.0;  // absolute, after scaling by the sup norm
};

inline constexpr double kDefaultSeveringTol = 1e-9;

/// Checks pairwise-distinct values and pairwise-distinct differences over ordered pairs of
/// distinct strings. Values closer than tol * ||f||_inf count as equal. Reports the
/// lexicographically first violation among detected near-coincidences.
SeveringReport check_severing(const ObjectiveTable& table, double tol = kDefaultSeveringTol);

inline constexpr int kMaxClosureBits = 3;

struct ClosureResult {
    int dimension = 0;
    int depth_reached = 0;
    bool converged = false;  // false: max_depth hit before a fixpoint, dimension is partial
};

/// Real dimension of the Lie algebra generated by iB and iC under commutators, using modified
/// Gram-Schmidt with a 1e-8 acceptance threshold.
ClosureResult lie_closure(const ObjectiveTable& table, int max_depth);
int lie_closure_dim(const ObjectiveTable& table, int max_depth);

/// BFS over the hypercube graph given by the nonzero off-diagonal entries of B.
bool mixer_graph_connected(int n_bits);
std::size_t mixer_graph_reachable(int n_bits);

void write_severing_json(std::ostream& out, const SeveringReport& report);

}  // namespace deepqaoa

#endif  // DEEPQAOA_UNIVERSALITY_HPP_
