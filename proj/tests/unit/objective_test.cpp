#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "deepqaoa/objective.hpp"

using namespace deepqaoa;

TEST(BitString, ValidatesRange) {
    EXPECT_THROW(BitString(4, 2), std::out_of_range);
    EXPECT_THROW(BitString(0, 0), std::invalid_argument);
    EXPECT_THROW(BitString(0, kMaxBits + 1), std::invalid_argument);
    const BitString z(0b101, 3);
    EXPECT_TRUE(z.bit(0));
    EXPECT_FALSE(z.bit(1));
    EXPECT_EQ(z.flipped(1).value(), 0b111u);
    EXPECT_EQ(z.complement().value(), 0b010u);
    EXPECT_EQ(z.popcount(), 2);
    EXPECT_EQ(hamming_distance(z, BitString(0b010, 3)), 3);
}

TEST(ObjectiveTable, CachesStatistics) {
    const ObjectiveTable t(2, {3.0, -1.0, 2.0, -1.0});
    EXPECT_EQ(t.f_min(), -1.0);
    EXPECT_EQ(t.f_max(), 3.0);
    EXPECT_DOUBLE_EQ(t.mean(), 0.75);
    EXPECT_EQ(t.sup_norm(), 3.0);
    ASSERT_EQ(t.argmin_set().size(), 2u);
    EXPECT_EQ(t.argmin_set()[0].value(), 1u);
    EXPECT_EQ(t.argmin_set()[1].value(), 3u);
    EXPECT_TRUE(t.is_optimal(3));
    EXPECT_FALSE(t.is_optimal(0));
}

TEST(ObjectiveTable, RejectsBadInput) {
    EXPECT_THROW(ObjectiveTable(2, {1.0, 2.0, 3.0}), std::invalid_argument);
    EXPECT_THROW(ObjectiveTable(1, {1.0, NAN}), std::invalid_argument);
    EXPECT_THROW(ObjectiveTable(1, {1.0, INFINITY}), std::invalid_argument);
}

TEST(Traceless, ZeroMeanAndShiftInvariant) {
    const auto t = gen_uniform(6, 3, 0.0, 1.0);
    const TracelessObjective c(t);
    double s = 0.0;
    for (double x : c.values()) s += x;
    EXPECT_NEAR(s, 0.0, 1e-12);
    std::vector<double> shifted(t.values().begin(), t.values().end());
    for (auto& x : shifted) x += 5.0;
    const TracelessObjective c2(ObjectiveTable(6, shifted));
    for (std::size_t z = 0; z < t.size(); ++z) EXPECT_NEAR(c[z], c2[z], 1e-12);
}

TEST(Normalize, UnitSupNorm) {
    const ObjectiveTable t(2, {-4.0, 1.0, 2.0, 0.5});
    const auto n = normalize_sup(t);
    EXPECT_EQ(n.sup_norm(), 1.0);
    EXPECT_EQ(n[0], -1.0);
    EXPECT_EQ(n[2], 0.5);
    EXPECT_THROW(normalize_sup(gen_constant(3, 0.0)), std::invalid_argument);
}

TEST(Generators, DeterministicAndSeedSensitive) {
    for (auto gen : {+[](std::uint64_t s) { return gen_uniform(7, s, 0.0, 1.0); },
                     +[](std::uint64_t s) { return gen_bimodal(7, s, 0.0, 1.0); },
                     +[](std::uint64_t s) { return gen_qubo(7, s); }}) {
        const auto a = gen(11), b = gen(11), c = gen(12);
        EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
        EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
    }
}

TEST(Generators, UniformInRange) {
    const auto t = gen_uniform(10, 5, -2.0, 3.0);
    for (double x : t.values()) {
        EXPECT_GE(x, -2.0);
        EXPECT_LT(x, 3.0);
    }
}

TEST(Generators, BimodalBands) {
    const auto t = gen_bimodal(10, 5, 0.0, 10.0);
    int low = 0, high = 0;
    for (double x : t.values()) {
        const bool in_low = x >= 0.0 && x <= 2.0;
        const bool in_high = x >= 8.0 && x <= 10.0;
        EXPECT_TRUE(in_low || in_high) << x;
        low += in_low;
        high += in_high;
    }
    EXPECT_GT(low, 400);
    EXPECT_GT(high, 400);
}

TEST(Generators, QuboMatchesBruteForce) {
    const int n = 5;
    const auto m = random_qubo_matrix(n, 9);
    const auto t = gen_qubo(n, 9);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) EXPECT_EQ(m[i * n + j], m[j * n + i]);
    for (std::size_t z = 0; z < t.size(); ++z) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += ((z >> i) & 1) * m[i * n + j] * ((z >> j) & 1);
        EXPECT_NEAR(t[z], acc, 1e-12);
    }
    EXPECT_EQ(t[0], 0.0);
}

TEST(Generators, QuboMatrixUnitSpectralNorm) {
    const int n = 6;
    const auto m = random_qubo_matrix(n, 2);
    // Power iteration on M^2 as an independent norm check.
    std::vector<double> v(n, 1.0), w(n);
    double lambda = 0.0;
    for (int k = 0; k < 2000; ++k) {
        for (int i = 0; i < n; ++i) {
            w[i] = 0.0;
            for (int j = 0; j < n; ++j) w[i] += m[i * n + j] * v[j];
        }
        std::vector<double> w2(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w2[i] += m[i * n + j] * w[j];
        double nn = 0.0;
        for (double x : w2) nn += x * x;
        nn = std::sqrt(nn);
        lambda = nn;
        for (int i = 0; i < n; ++i) v[i] = w2[i] / nn;
    }
    EXPECT_NEAR(std::sqrt(lambda), 1.0, 1e-6);
}

TEST(Generators, MaxcutCountsCutEdges) {
    const auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const auto t = gen_maxcut(g);
    EXPECT_EQ(t[0b0101], -4.0);
    EXPECT_EQ(t[0b1010], -4.0);
    EXPECT_EQ(t[0], 0.0);
    EXPECT_EQ(t[0b0001], -2.0);
    ASSERT_EQ(t.argmin_set().size(), 2u);
    for (std::size_t z = 0; z < t.size(); ++z) EXPECT_EQ(t[z], t[z ^ 0xF]);
}

TEST(Generators, RandomGraphValid) {
    const auto g = gen_random_graph(9, 0.5, 4);
    EXPECT_EQ(g.n_vertices, 9);
    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : g.edges) {
        EXPECT_LT(i, j);
        EXPECT_TRUE(seen.insert({i, j}).second);
    }
    EXPECT_EQ(gen_random_graph(9, 0.0, 4).edges.size(), 0u);
    EXPECT_EQ(gen_random_graph(9, 1.0, 4).edges.size(), 36u);
}

TEST(Graph, RejectsInvalidEdges) {
    EXPECT_THROW(make_graph(3, {{0, 0}}), std::invalid_argument);
    EXPECT_THROW(make_graph(3, {{0, 3}}), std::invalid_argument);
    EXPECT_THROW(make_graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    const auto g = make_graph(3, {{2, 1}, {0, 1}});
    EXPECT_EQ(g.edges, (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}));
}

TEST(Serialization, CsvRoundTripIsExact) {
    const auto t = gen_qubo(6, 3);
    std::stringstream ss;
    write_table_csv(ss, t);
    const auto back = read_table_csv(ss);
    EXPECT_EQ(back.n_bits(), 6);
    EXPECT_EQ(back.kind(), ObjectiveKind::qubo);
    EXPECT_EQ(back.seed(), 3u);
    EXPECT_TRUE(std::equal(t.values().begin(), t.values().end(), back.values().begin()));
}

TEST(Serialization, BinaryRoundTripIsExact) {
    const auto t = gen_bimodal(8, 17, -1.0, 1.0);
    std::stringstream ss;
    write_table_binary(ss, t);
    const auto back = read_table_binary(ss);
    EXPECT_EQ(back.kind(), ObjectiveKind::bimodal);
    EXPECT_EQ(back.seed(), 17u);
    EXPECT_TRUE(std::equal(t.values().begin(), t.values().end(), back.values().begin()));
}

TEST(Serialization, RejectsCorruptBinary) {
    std::stringstream ss("XXXXgarbage");
    EXPECT_THROW(read_table_binary(ss), std::exception);
}

TEST(Serialization, GraphRoundTrip) {
    const auto g = gen_random_graph(7, 0.4, 2);
    std::stringstream ss;
    write_graph(ss, g);
    const auto back = read_graph(ss);
    EXPECT_EQ(back.n_vertices, g.n_vertices);
    EXPECT_EQ(back.edges, g.edges);
}

TEST(ObjectiveKind, StringRoundTrip) {
    for (auto k : {ObjectiveKind::custom, ObjectiveKind::uniform, ObjectiveKind::bimodal, ObjectiveKind::qubo,
                   ObjectiveKind::maxcut, ObjectiveKind::constant})
        EXPECT_EQ(objective_kind_from_string(to_string(k)), k);
    EXPECT_THROW(objective_kind_from_string("nope"), std::invalid_argument);
}
