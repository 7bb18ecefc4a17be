#ifndef DEEPQAOA_METRICS_HPP_
#define DEEPQAOA_METRICS_HPP_

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "deepqaoa/objective.hpp"
#include "deepqaoa/statevector.hpp"

namespace deepqaoa {

struct RoundRecord;

/// Total weight of the optimal strings.
double success_probability(const StateVector& state, std::span<const BitString> argmin_set);

struct ApproximationRatios {
    double raw = 0.0;         // <H> / f_min; NaN when f_min == 0
    bool raw_defined = true;
    double normalized = 0.0;  // (f_max - <H>) / (f_max - f_min), 1 for constant f
};

ApproximationRatios approximation_ratios(const StateVector& state, const ObjectiveTable& table);

struct OutcomeDistribution {
    std::vector<double> probabilities;
};

OutcomeDistribution outcome_distribution(const StateVector& state);

/// (p, |grad_B|) per record.
std::vector<std::pair<int, double>> gradient_trace(std::span<const RoundRecord> records);

// Writers shared by the CLI and the Python bindings.
void write_records_csv(std::ostream& out, std::span<const RoundRecord> records);
void write_distribution_csv(std::ostream& out, const OutcomeDistribution& dist);

}  // namespace deepqaoa

#endif  // DEEPQAOA_METRICS_HPP_
