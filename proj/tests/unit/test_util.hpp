#ifndef DEEPQAOA_TEST_UTIL_HPP_
#define DEEPQAOA_TEST_UTIL_HPP_

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "deepqaoa/objective.hpp"
#include "deepqaoa/statevector.hpp"

namespace testutil {

using deepqaoa::Complex;

inline deepqaoa::StateVector random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> amps(std::size_t{1} << n);
    for (auto& a : amps) a = Complex(g(rng), g(rng));
    return deepqaoa::StateVector(n, std::move(amps));
}

inline deepqaoa::ObjectiveTable random_table(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> f(std::size_t{1} << n);
    for (auto& x : f) x = u(rng);
    return deepqaoa::ObjectiveTable(n, std::move(f));
}

// Dense B = -sum_n X_n.
inline Eigen::MatrixXd dense_B(int n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index z = 0; z < d; ++z)
        for (int q = 0; q < n; ++q) b(z ^ (Eigen::Index{1} << q), z) -= 1.0;
    return b;
}

// exp(-i t A) for real symmetric A, via eigendecomposition.
inline Eigen::MatrixXcd expm_herm(const Eigen::MatrixXd& a, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const Eigen::MatrixXcd v = es.eigenvectors().cast<Complex>();
    Eigen::VectorXcd phases(a.rows());
    for (Eigen::Index k = 0; k < a.rows(); ++k) phases(k) = std::exp(Complex(0.0, -t * es.eigenvalues()(k)));
    return v * phases.asDiagonal() * v.adjoint();
}

inline Eigen::VectorXcd to_eigen(const deepqaoa::StateVector& s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t z = 0; z < s.size(); ++z) v(static_cast<Eigen::Index>(z)) = s[z];
    return v;
}

inline double expectation_oracle(const Eigen::VectorXcd& v, const deepqaoa::ObjectiveTable& t) {
    double acc = 0.0;
    for (Eigen::Index z = 0; z < v.size(); ++z) acc += t[static_cast<std::size_t>(z)] * std::norm(v(z));
    return acc;
}

}  // namespace testutil

#endif  // DEEPQAOA_TEST_UTIL_HPP_
