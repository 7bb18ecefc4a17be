#include "deepqaoa/universality.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace deepqaoa {

namespace {

// Resonance check stores one entry per unordered pair: 2^(2N-1) entries.
constexpr int kMaxResonanceBits = 12;

struct PairDiff {
    double d;  // f(a) - f(b), a < b
    std::uint32_t a;
    std::uint32_t b;
};

bool pair_pair_less(const std::pair<StringPair, StringPair>& x, const std::pair<StringPair, StringPair>& y) {
    return x < y;
}

std::pair<StringPair, StringPair> ordered(StringPair p, StringPair q) {
    return p < q ? std::make_pair(p, q) : std::make_pair(q, p);
}

}  // namespace

SeveringReport check_severing(const ObjectiveTable& table, double tol) {
    if (tol < 0.0) throw std::invalid_argument("check_severing: tol must be >= 0");
    SeveringReport report;
    report.tolerance = tol * table.sup_norm();
    const double abs_tol = report.tolerance;
    const std::size_t dim = table.size();

    // (a) distinct values
    std::vector<std::uint32_t> order(dim);
    for (std::size_t z = 0; z < dim; ++z) order[z] = static_cast<std::uint32_t>(z);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return table[x] < table[y]; });
    std::optional<StringPair> value_hit;
    for (std::size_t k = 0; k + 1 < dim; ++k) {
        if (table[order[k + 1]] - table[order[k]] <= abs_tol) {
            StringPair p{std::min(order[k], order[k + 1]), std::max(order[k], order[k + 1])};
            if (!value_hit || p < *value_hit) value_hit = p;
        }
    }
    if (value_hit) {
        report.severing = false;
        report.violation = SeveringViolation::degenerate_values;
        report.first = *value_hit;
        report.second = *value_hit;
        return report;
    }

    // (b) distinct differences over ordered pairs of distinct strings. d(z,z') = -d(z',z), so
    // one entry per unordered pair suffices, comparing magnitudes.
    if (table.n_bits() > kMaxResonanceBits) {
        throw std::invalid_argument("check_severing: resonance check limited to N <= " +
                                    std::to_string(kMaxResonanceBits));
    }
    std::vector<PairDiff> diffs;
    diffs.reserve(dim * (dim - 1) / 2);
    for (std::uint32_t a = 0; a < dim; ++a)
        for (std::uint32_t b = a + 1; b < dim; ++b) diffs.push_back({table[a] - table[b], a, b});
    std::sort(diffs.begin(), diffs.end(), [](const PairDiff& x, const PairDiff& y) {
        const double ax = std::abs(x.d), ay = std::abs(y.d);
        if (ax != ay) return ax < ay;
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    std::optional<std::pair<StringPair, StringPair>> hit;
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k) {
        const auto& x = diffs[k];
        const auto& y = diffs[k + 1];
        if (std::abs(y.d) - std::abs(x.d) > abs_tol) continue;
        // Same sign: d(x.a, x.b) = d(y.a, y.b); opposite: d(x.a, x.b) = d(y.b, y.a).
        const StringPair p{x.a, x.b};
        const StringPair q = (x.d >= 0) == (y.d >= 0) ? StringPair{y.a, y.b} : StringPair{y.b, y.a};
        const auto candidate = ordered(p, q);
        if (!hit || pair_pair_less(candidate, *hit)) hit = candidate;
    }
    if (hit) {
        report.severing = false;
        report.violation = SeveringViolation::degenerate_resonance;
        report.first = hit->first;
        report.second = hit->second;
    }
    return report;
}

namespace {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

double hs_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace().real(); }

class OrthonormalSpan {
public:
    static constexpr double kAcceptance = 1e-8;

    // Returns the orthonormalized residual if m adds a new direction.
    std::optional<Matrix> try_add(const Matrix& m) {
        const double norm = std::sqrt(hs_inner(m, m));
        if (norm < kAcceptance) return std::nullopt;
        Matrix v = m / norm;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& e : basis_) v -= hs_inner(e, v) * e;
        }
        const double residual = std::sqrt(hs_inner(v, v));
        if (residual <= kAcceptance) return std::nullopt;
        v /= residual;
        basis_.push_back(v);
        return v;
    }

    const std::vector<Matrix>& basis() const { return basis_; }

private:
    std::vector<Matrix> basis_;
};

}  // namespace

ClosureResult lie_closure(const ObjectiveTable& table, int max_depth) {
    const int n = table.n_bits();
    if (n > kMaxClosureBits) {
        throw std::invalid_argument("lie_closure: dense closure limited to N <= " + std::to_string(kMaxClosureBits));
    }
    if (max_depth < 0) throw std::invalid_argument("lie_closure: max_depth must be >= 0");
    const auto dim = static_cast<Eigen::Index>(table.size());
    const Complex i_unit(0.0, 1.0);

    Matrix b = Matrix::Zero(dim, dim);
    for (Eigen::Index z = 0; z < dim; ++z)
        for (int q = 0; q < n; ++q) b(z ^ (Eigen::Index{1} << q), z) -= 1.0;
    const TracelessObjective c(table);
    Matrix cm = Matrix::Zero(dim, dim);
    for (Eigen::Index z = 0; z < dim; ++z) cm(z, z) = c[static_cast<std::size_t>(z)];

    OrthonormalSpan span;
    std::vector<Matrix> frontier;
    for (const Matrix& g : {Matrix(i_unit * b), Matrix(i_unit * cm)}) {
        if (auto added = span.try_add(g)) frontier.push_back(*added);
    }

    ClosureResult result;
    while (!frontier.empty() && result.depth_reached < max_depth) {
        std::vector<Matrix> next;
        const std::size_t existing = span.basis().size();
        for (const auto& x : frontier) {
            for (std::size_t k = 0; k < existing; ++k) {
                const Matrix y = span.basis()[k];
                if (auto added = span.try_add(x * y - y * x)) next.push_back(*added);
            }
        }
        ++result.depth_reached;
        frontier = std::move(next);
    }
    result.converged = frontier.empty();
    result.dimension = static_cast<int>(span.basis().size());
    return result;
}

int lie_closure_dim(const ObjectiveTable& table, int max_depth) { return lie_closure(table, max_depth).dimension; }

std::size_t mixer_graph_reachable(int n_bits) {
    check_n_bits(n_bits);
    const std::size_t dim = std::size_t{1} << n_bits;
    std::vector<bool> seen(dim, false);
    std::queue<std::size_t> queue;
    queue.push(0);
    seen[0] = true;
    std::size_t visited = 0;
    while (!queue.empty()) {
        const std::size_t z = queue.front();
        queue.pop();
        ++visited;
        // <z'|B|z> != 0 exactly when z' = z xor e_q
        for (int q = 0; q < n_bits; ++q) {
            const std::size_t w = z ^ (std::size_t{1} << q);
            if (!seen[w]) {
                seen[w] = true;
                queue.push(w);
            }
        }
    }
    return visited;
}

bool mixer_graph_connected(int n_bits) { return mixer_graph_reachable(n_bits) == (std::size_t{1} << n_bits); }

void write_severing_json(std::ostream& out, const SeveringReport& report) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["severing"] = report.severing;
    switch (report.violation) {
        case SeveringViolation::none: j["violation"] = "none"; break;
        case SeveringViolation::degenerate_values:
            j["violation"] = "degenerate_values";
            j["z"] = report.first.first;
            j["z_prime"] = report.first.second;
            break;
        case SeveringViolation::degenerate_resonance:
            j["violation"] = "degenerate_resonance";
            j["pair"] = {report.first.first, report.first.second};
            j["pair_prime"] = {report.second.first, report.second.second};
            break;
    }
    j["tolerance"] = report.tolerance;
    out << j.dump(2) << '\n';
}

}  // namespace deepqaoa
