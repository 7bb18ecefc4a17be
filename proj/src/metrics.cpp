#include "deepqaoa/metrics.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "deepqaoa/search.hpp"

namespace deepqaoa {

double success_probability(const StateVector& state, std::span<const BitString> argmin_set) {
    if (argmin_set.empty()) throw std::invalid_argument("success_probability: empty argmin set");
    double p = 0.0;
    for (const auto& z : argmin_set) p += overlap_probability(state, z);
    return p;
}

ApproximationRatios approximation_ratios(const StateVector& state, const ObjectiveTable& table) {
    const double e = expectation(state, table);
    ApproximationRatios out;
    if (table.f_min() == 0.0) {
        out.raw = std::numeric_limits<double>::quiet_NaN();
        out.raw_defined = false;
    } else {
        out.raw = e / table.f_min();
    }
    const double spread = table.f_max() - table.f_min();
    out.normalized = spread > 0.0 ? (table.f_max() - e) / spread : 1.0;
    return out;
}

OutcomeDistribution outcome_distribution(const StateVector& state) {
    OutcomeDistribution dist;
    dist.probabilities.resize(state.size());
    for (std::size_t z = 0; z < state.size(); ++z) dist.probabilities[z] = std::norm(state[z]);
    return dist;
}

std::vector<std::pair<int, double>> gradient_trace(std::span<const RoundRecord> records) {
    std::vector<std::pair<int, double>> out;
    out.reserve(records.size());
    for (const auto& r : records) out.emplace_back(r.p, r.grad_b_mag);
    return out;
}

void write_records_csv(std::ostream& out, std::span<const RoundRecord> records) {
    std::ostringstream body;
    body.precision(17);
    body << "p,beta,gamma,f_value,success_prob,approx_ratio_raw,approx_ratio_norm,grad_b_mag\n";
    for (const auto& r : records) {
        body << r.p << ',' << r.chosen_beta << ',' << r.chosen_gamma << ',' << r.f_value << ',' << r.success_prob << ',';
        if (std::isnan(r.approx_ratio_raw)) {
            body << "nan";
        } else {
            body << r.approx_ratio_raw;
        }
        body << ',' << r.approx_ratio_norm << ',' << r.grad_b_mag << '\n';
    }
    out << body.str();
}

void write_distribution_csv(std::ostream& out, const OutcomeDistribution& dist) {
    std::ostringstream body;
    body.precision(17);
    body << "z_decimal,probability\n";
    for (std::size_t z = 0; z < dist.probabilities.size(); ++z) body << z << ',' << dist.probabilities[z] << '\n';
    out << body.str();
}

}  // namespace deepqaoa
