#include "deepqaoa/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "deepqaoa/detail/summation.hpp"

namespace deepqaoa {

namespace {

void check_table_bits(const ObjectiveTable& table, BitString z) {
    if (z.n_bits() != table.n_bits()) throw std::invalid_argument("bit string length does not match table");
}

double c_sup_norm(const ObjectiveTable& table) { return TracelessObjective(table).sup_norm(); }

void apply_b_real(std::span<const double> in, std::span<double> out, int n_bits) {
    for (std::size_t z = 0; z < in.size(); ++z) {
        double s = 0.0;
        for (int q = 0; q < n_bits; ++q) s += in[z ^ (std::size_t{1} << q)];
        out[z] = -s;
    }
}

}  // namespace

double mu(const ObjectiveTable& table, BitString z) {
    check_table_bits(table, z);
    const double f0 = table[z.index()];
    double s = 0.0;
    for (int q = 0; q < table.n_bits(); ++q) s += table[z.flipped(q).index()] - f0;
    return s / table.n_bits();
}

std::vector<double> mu_all(const ObjectiveTable& table) {
    std::vector<double> out(table.size());
    for (std::size_t z = 0; z < out.size(); ++z) out[z] = mu(table, BitString(z, table.n_bits()));
    return out;
}

double mu_tilde(const ObjectiveTable& table, BitString z) {
    const double norm = c_sup_norm(table);
    if (norm == 0.0) throw std::invalid_argument("mu_tilde: constant objective has ||c|| = 0");
    return mu(table, z) / norm;
}

double epsilon_bound(const ObjectiveTable& table, BitString z) {
    const double m = mu(table, z);
    if (!(m > 0.0)) throw NotAValleyError("string " + std::to_string(z.value()) + " is not a valley center (mu <= 0)");
    return m / c_sup_norm(table) / (2.0 * table.n_bits());
}

double f2b_norm_bound(const ObjectiveTable& table) {
    const double n = table.n_bits();
    return 4.0 * n * n * c_sup_norm(table);
}

void apply_f2b(const ObjectiveTable& table, std::span<const double> in, std::span<double> out) {
    const std::size_t dim = table.size();
    if (in.size() != dim || out.size() != dim) throw std::invalid_argument("apply_f2b: dimension mismatch");
    const int n = table.n_bits();
    std::vector<double> t1(dim), t2(dim);
    // -B B H v
    for (std::size_t z = 0; z < dim; ++z) t1[z] = table[z] * in[z];
    apply_b_real(t1, t2, n);
    apply_b_real(t2, t1, n);
    for (std::size_t z = 0; z < dim; ++z) out[z] = -t1[z];
    // + 2 B H B v
    apply_b_real(in, t1, n);
    for (std::size_t z = 0; z < dim; ++z) t1[z] *= table[z];
    apply_b_real(t1, t2, n);
    for (std::size_t z = 0; z < dim; ++z) out[z] += 2.0 * t2[z];
    // - H B B v
    apply_b_real(in, t1, n);
    apply_b_real(t1, t2, n);
    for (std::size_t z = 0; z < dim; ++z) out[z] -= table[z] * t2[z];
}

double f2b_norm_estimate(const ObjectiveTable& table, int iters) {
    if (iters < 1) throw std::invalid_argument("f2b_norm_estimate: iters must be >= 1");
    const std::size_t dim = table.size();
    std::mt19937_64 rng(0x5eedf2b0ULL);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(dim), w(dim);
    for (double& x : v) x = dist(rng);
    auto norm_of = [](const std::vector<double>& x) {
        return std::sqrt(detail::pairwise_sum(x.size(), [&](std::size_t i) { return x[i] * x[i]; }));
    };
    double vn = norm_of(v);
    for (double& x : v) x /= vn;
    double estimate = 0.0;
    for (int k = 0; k < iters; ++k) {
        apply_f2b(table, v, w);
        const double wn = norm_of(w);
        // For symmetric operators ||A v_k|| is non-decreasing along the iteration.
        estimate = std::max(estimate, wn);
        if (wn == 0.0) break;
        for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / wn;
    }
    return estimate;
}

double epsilon_bound_tight(const ObjectiveTable& table, BitString z, int iters) {
    const double m = mu(table, z);
    if (!(m > 0.0)) throw NotAValleyError("string " + std::to_string(z.value()) + " is not a valley center (mu <= 0)");
    return 2.0 * table.n_bits() * m / f2b_norm_estimate(table, iters);
}

bool trough_membership(const StateVector& state, const ObjectiveTable& table, double grad_tol, double hess_tol) {
    if (!(grad_tol > 0.0) || hess_tol < 0.0) throw std::invalid_argument("trough_membership: bad tolerances");
    return std::abs(grad_B(state, table)) < grad_tol && hess_B(state, table) > hess_tol;
}

MuFPoint mu_f_point(const ObjectiveTable& table, BitString z) {
    const double norm = c_sup_norm(table);
    const double m = mu(table, z);
    const double mt = norm > 0.0 ? m / norm : 0.0;
    const double eps = m > 0.0 ? mt / (2.0 * table.n_bits()) : 0.0;
    return MuFPoint{z, table[z.index()], m, mt, eps};
}

std::vector<MuFPoint> mu_f_diagram(const ObjectiveTable& table, std::optional<std::size_t> sample_size,
                                   std::uint64_t seed) {
    const int n = table.n_bits();
    const double norm = c_sup_norm(table);
    auto point = [&](std::size_t z) {
        BitString s(z, n);
        const double m = mu(table, s);
        const double mt = norm > 0.0 ? m / norm : 0.0;
        return MuFPoint{s, table[z], m, mt, m > 0.0 ? mt / (2.0 * n) : 0.0};
    };
    std::vector<MuFPoint> out;
    if (!sample_size) {
        if (n > kExhaustiveDiagramMaxBits) {
            throw std::invalid_argument("mu_f_diagram: exhaustive enumeration limited to N <= " +
                                        std::to_string(kExhaustiveDiagramMaxBits) + "; pass a sample size");
        }
        out.reserve(table.size());
        for (std::size_t z = 0; z < table.size(); ++z) out.push_back(point(z));
        return out;
    }
    if (*sample_size > table.size()) throw std::invalid_argument("mu_f_diagram: sample larger than 2^N");
    // Floyd's algorithm: distinct uniform sample without materializing all 2^N indices.
    std::mt19937_64 rng(seed);
    std::unordered_set<std::size_t> chosen;
    chosen.reserve(*sample_size * 2);
    for (std::size_t j = table.size() - *sample_size; j < table.size(); ++j) {
        std::uniform_int_distribution<std::size_t> pick(0, j);
        const std::size_t t = pick(rng);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::size_t> zs(chosen.begin(), chosen.end());
    std::sort(zs.begin(), zs.end());
    out.reserve(zs.size());
    for (std::size_t z : zs) out.push_back(point(z));
    return out;
}

DiagramStats diagram_stats(std::span<const MuFPoint> points, std::span<const BitString> argmin_set) {
    if (points.empty()) throw std::invalid_argument("diagram_stats: no points");
    DiagramStats stats;
    const auto count = static_cast<double>(points.size());

    std::size_t positive = 0;
    const MuFPoint* best = &points[0];
    stats.f_lo = stats.f_hi = points[0].f_val;
    stats.mu_lo = stats.mu_hi = points[0].mu;
    for (const auto& p : points) {
        if (p.mu > 0.0) ++positive;
        if (p.mu > best->mu || (p.mu == best->mu && p.z < best->z)) best = &p;
        stats.f_lo = std::min(stats.f_lo, p.f_val);
        stats.f_hi = std::max(stats.f_hi, p.f_val);
        stats.mu_lo = std::min(stats.mu_lo, p.mu);
        stats.mu_hi = std::max(stats.mu_hi, p.mu);
    }
    stats.frac_mu_positive = static_cast<double>(positive) / count;
    stats.argmax_mu = best->z;
    stats.max_mu = best->mu;
    stats.deepest_is_largest = std::find(argmin_set.begin(), argmin_set.end(), best->z) != argmin_set.end();

    const double f_mean = detail::pairwise_sum(points.size(), [&](std::size_t i) { return points[i].f_val; }) / count;
    const double m_mean = detail::pairwise_sum(points.size(), [&](std::size_t i) { return points[i].mu; }) / count;
    const double sff = detail::pairwise_sum(points.size(), [&](std::size_t i) {
        const double d = points[i].f_val - f_mean;
        return d * d;
    });
    const double smm = detail::pairwise_sum(points.size(), [&](std::size_t i) {
        const double d = points[i].mu - m_mean;
        return d * d;
    });
    const double sfm = detail::pairwise_sum(points.size(), [&](std::size_t i) {
        return (points[i].f_val - f_mean) * (points[i].mu - m_mean);
    });
    if (sff > 0.0 && smm > 0.0) {
        stats.pearson_f_mu = std::clamp(sfm / std::sqrt(sff * smm), -1.0, 1.0);
    } else {
        stats.correlation_degenerate = true;
    }

    stats.histogram.assign(kHistogramBins * kHistogramBins, 0);
    auto bin = [](double v, double lo, double hi) {
        if (!(hi > lo)) return 0;
        const int b = static_cast<int>((v - lo) / (hi - lo) * kHistogramBins);
        return std::clamp(b, 0, kHistogramBins - 1);
    };
    for (const auto& p : points) {
        const int i = bin(p.f_val, stats.f_lo, stats.f_hi);
        const int j = bin(p.mu, stats.mu_lo, stats.mu_hi);
        ++stats.histogram[static_cast<std::size_t>(i * kHistogramBins + j)];
    }
    return stats;
}

void write_diagram_csv(std::ostream& out, std::span<const MuFPoint> points) {
    std::ostringstream body;
    body.precision(17);
    body << "z_decimal,f,mu,mu_tilde,eps_bound\n";
    for (const auto& p : points) {
        body << p.z.value() << ',' << p.f_val << ',' << p.mu << ',' << p.mu_tilde << ',' << p.eps_bound << '\n';
    }
    out << body.str();
}

}  // namespace deepqaoa
