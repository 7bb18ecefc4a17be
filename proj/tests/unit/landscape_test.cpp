#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "deepqaoa/landscape.hpp"
#include "unit/test_util.hpp"

using namespace deepqaoa;

namespace {

double mu_oracle(const ObjectiveTable& t, std::size_t z) {
    const int n = t.n_bits();
    double acc = 0.0;
    for (std::size_t w = 0; w < t.size(); ++w) {
        if (std::popcount(w ^ z) == 1) acc += t[w] - t[z];
    }
    return acc / n;
}

double dense_commutator_norm(const ObjectiveTable& t, double scale) {
    const int n = t.n_bits();
    const auto b = testutil::dense_B(n);
    const Eigen::Index d = b.rows();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index z = 0; z < d; ++z) h(z, z) = t[static_cast<std::size_t>(z)];
    const Eigen::MatrixXd bh = b * h - h * b;
    const Eigen::MatrixXd k = scale * (b * bh - bh * b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST(Mu, MatchesNeighbourEnumeration) {
    std::mt19937_64 rng(1);
    for (int n = 1; n <= 8; ++n) {
        const auto t = testutil::random_table(n, rng);
        const auto all = mu_all(t);
        for (std::size_t z = 0; z < t.size(); ++z) {
            EXPECT_NEAR(mu(t, BitString(z, n)), mu_oracle(t, z), 1e-14);
            EXPECT_EQ(all[z], mu(t, BitString(z, n)));
        }
    }
}

TEST(Mu, SumsToZero) {
    for (const auto& t : {gen_uniform(10, 1, 0.0, 1.0), gen_bimodal(10, 1, 0.0, 1.0), gen_qubo(10, 1),
                          gen_maxcut(gen_random_graph(10, 0.5, 1))}) {
        const auto all = mu_all(t);
        double s = 0.0;
        for (double m : all) s += m;
        EXPECT_LE(std::abs(s), 1e-9 * t.size() * t.sup_norm());
    }
}

TEST(Mu, PositivelyHomogeneous) {
    const auto t = gen_qubo(6, 4);
    std::vector<double> scaled(t.values().begin(), t.values().end());
    for (auto& x : scaled) x *= 3.5;
    const ObjectiveTable s(6, scaled);
    std::size_t argmax_t = 0, argmax_s = 0;
    for (std::size_t z = 0; z < t.size(); ++z) {
        const BitString b(z, 6);
        EXPECT_NEAR(mu(s, b), 3.5 * mu(t, b), 1e-12);
        EXPECT_NEAR(mu_tilde(s, b), mu_tilde(t, b), 1e-12);
        if (mu(t, b) > mu(t, BitString(argmax_t, 6))) argmax_t = z;
        if (mu(s, b) > mu(s, BitString(argmax_s, 6))) argmax_s = z;
    }
    EXPECT_EQ(argmax_t, argmax_s);
}

TEST(Mu, ConstantTable) {
    const auto t = gen_constant(4, 2.0);
    for (std::size_t z = 0; z < t.size(); ++z) EXPECT_EQ(mu(t, BitString(z, 4)), 0.0);
    EXPECT_THROW(mu_tilde(t, BitString(0, 4)), std::invalid_argument);
}

TEST(EpsilonBound, Formula) {
    const ObjectiveTable t(2, {0.0, 1.0, 1.0, 2.0});
    // mu(00) = 1, ||c|| = 1, N = 2 -> 1 / 4
    EXPECT_DOUBLE_EQ(epsilon_bound(t, BitString(0, 2)), 0.25);
    EXPECT_THROW(epsilon_bound(t, BitString(3, 2)), NotAValleyError);
    EXPECT_THROW(epsilon_bound(t, BitString(1, 2)), NotAValleyError);  // mu = 0
}

TEST(EpsilonBound, ShrinksLikeOneOverN) {
    for (int n = 2; n <= 8; ++n) {
        std::vector<double> f(std::size_t{1} << n);
        for (std::size_t z = 0; z < f.size(); ++z) f[z] = std::popcount(z);
        const ObjectiveTable t(n, f);
        const double mt = mu_tilde(t, BitString(0, n));
        EXPECT_NEAR(epsilon_bound(t, BitString(0, n)), mt / (2.0 * n), 1e-15);
    }
}

TEST(F2b, BoundFormula) {
    EXPECT_EQ(f2b_norm_bound(gen_constant(5, 3.0)), 0.0);
    auto t = normalize_sup(gen_qubo(9, 1));
    const TracelessObjective c(t);
    EXPECT_NEAR(f2b_norm_bound(t), 324.0 * c.sup_norm(), 1e-12);
}

TEST(F2b, ConstantTableHasZeroNorm) { EXPECT_EQ(f2b_norm_estimate(gen_constant(4, 1.0), 50), 0.0); }

TEST(F2b, DiagonalIsTwoNMu) {
    std::mt19937_64 rng(2);
    const auto t = testutil::random_table(5, rng);
    std::vector<double> e(t.size(), 0.0), out(t.size());
    for (std::size_t z = 0; z < t.size(); ++z) {
        std::fill(e.begin(), e.end(), 0.0);
        e[z] = 1.0;
        apply_f2b(t, e, out);
        EXPECT_NEAR(out[z], 2.0 * 5 * mu(t, BitString(z, 5)), 1e-12);
    }
}

TEST(F2b, EstimateMatchesDenseNormAtN3) {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const auto t = testutil::random_table(3, rng);
        const double dense = dense_commutator_norm(t, -1.0);
        EXPECT_NEAR(f2b_norm_estimate(t, 200), dense, 0.01 * dense);
    }
}

TEST(F2b, EstimateMonotoneAndBounded) {
    for (int n = 2; n <= 9; ++n) {
        const auto t = gen_qubo(n, 5);
        double prev = 0.0;
        for (int it : {1, 2, 5, 20, 100}) {
            const double e = f2b_norm_estimate(t, it);
            EXPECT_GE(e, prev);
            EXPECT_LE(e, f2b_norm_bound(t) * (1 + 1e-12));
            prev = e;
        }
    }
    EXPECT_THROW(f2b_norm_estimate(gen_qubo(3, 1), 0), std::invalid_argument);
}

TEST(EpsilonBoundTight, AtLeastLooseBound) {
    const auto t = gen_qubo(3, 7);
    int checked = 0;
    for (std::size_t z = 0; z < t.size(); ++z) {
        const BitString b(z, 3);
        if (mu(t, b) <= 0.0) {
            EXPECT_THROW(epsilon_bound_tight(t, b, 200), NotAValleyError);
            continue;
        }
        ++checked;
        const double tight = epsilon_bound_tight(t, b, 200);
        EXPECT_NEAR(tight, 2.0 * 3 * mu(t, b) / dense_commutator_norm(t, -1.0), 1e-2 * tight);
        // Same formula with the operator-norm bound substituted for the estimate.
        EXPECT_NEAR(2.0 * 3 * mu(t, b) / f2b_norm_bound(t), epsilon_bound(t, b), 1e-15);
        EXPECT_GE(tight, epsilon_bound(t, b));
    }
    EXPECT_GT(checked, 0);
    EXPECT_THROW(epsilon_bound_tight(gen_constant(3, 1.0), BitString(0, 3), 10), std::exception);
}

TEST(Trough, BasisStatesByMuSign) {
    const auto t = gen_qubo(5, 2);
    for (std::size_t z = 0; z < t.size(); ++z) {
        const BitString b(z, 5);
        EXPECT_EQ(trough_membership(StateVector::basis(b), t), mu(t, b) > 0.0);
    }
    EXPECT_FALSE(trough_membership(plus_state(5), gen_constant(5, 1.0)));
}

TEST(Diagram, ExhaustiveHasAllStrings) {
    const auto t = gen_qubo(8, 3);
    const auto pts = mu_f_diagram(t);
    ASSERT_EQ(pts.size(), 256u);
    for (std::size_t z = 0; z < pts.size(); ++z) {
        EXPECT_EQ(pts[z].z.value(), z);
        EXPECT_EQ(pts[z].f_val, t[z]);
        EXPECT_EQ(pts[z].mu, mu(t, pts[z].z));
        EXPECT_EQ(pts[z].eps_bound, pts[z].mu > 0 ? pts[z].mu_tilde / 16.0 : 0.0);
    }
}

TEST(Diagram, SampleIsDistinctAndSorted) {
    const auto t = gen_uniform(10, 3, 0.0, 1.0);
    const auto pts = mu_f_diagram(t, 100, 9);
    ASSERT_EQ(pts.size(), 100u);
    for (std::size_t k = 1; k < pts.size(); ++k) EXPECT_LT(pts[k - 1].z.value(), pts[k].z.value());
    const auto again = mu_f_diagram(t, 100, 9);
    for (std::size_t k = 0; k < pts.size(); ++k) EXPECT_EQ(pts[k].z, again[k].z);
    EXPECT_THROW(mu_f_diagram(t, 2000, 1), std::invalid_argument);
}

TEST(DiagramStats, TinyExample) {
    const ObjectiveTable t(1, {0.0, 1.0});
    const auto pts = mu_f_diagram(t);
    const auto st = diagram_stats(pts, t.argmin_set());
    EXPECT_EQ(st.frac_mu_positive, 0.5);
    EXPECT_EQ(st.argmax_mu.value(), 0u);
    EXPECT_TRUE(st.deepest_is_largest);
}

TEST(DiagramStats, ConstantTable) {
    const auto t = gen_constant(4, 1.0);
    const auto pts = mu_f_diagram(t);
    const auto st = diagram_stats(pts, t.argmin_set());
    EXPECT_EQ(st.frac_mu_positive, 0.0);
    EXPECT_TRUE(st.correlation_degenerate);
    std::uint64_t total = 0;
    for (auto c : st.histogram) total += c;
    EXPECT_EQ(total, 16u);
}

TEST(DiagramCsv, Header) {
    const auto t = gen_qubo(2, 1);
    std::stringstream ss;
    write_diagram_csv(ss, mu_f_diagram(t));
    std::string line;
    std::getline(ss, line);
    EXPECT_EQ(line, "z_decimal,f,mu,mu_tilde,eps_bound");
    int rows = 0;
    while (std::getline(ss, line)) ++rows;
    EXPECT_EQ(rows, 4);
}
