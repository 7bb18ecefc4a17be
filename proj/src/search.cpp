#include "deepqaoa/search.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "deepqaoa/landscape.hpp"
#include "deepqaoa/metrics.hpp"

namespace deepqaoa {

namespace {

// Symmetric linspace over [-r, r]; the middle point is exactly zero for odd counts.
std::vector<double> symmetric_linspace(double r, int steps) {
    std::vector<double> out(static_cast<std::size_t>(steps));
    const int span = steps - 1;
    for (int k = 0; k < steps; ++k) out[static_cast<std::size_t>(k)] = r * static_cast<double>(2 * k - span) / span;
    return out;
}

StateVector candidate_state(const StateVector& state, LayerParams layer, std::span<const Complex> phase) {
    StateVector out = state;
    if (layer.gamma != 0.0) apply_diagonal(out, phase);
    apply_mixer(out, layer.beta);
    return out;
}

}  // namespace

CandidateGrid build_grid(double epsilon, double h_sup_norm) {
    if (!(epsilon > 0.0) || !(h_sup_norm > 0.0)) {
        throw std::invalid_argument("build_grid: epsilon and ||H|| must be positive");
    }
    CandidateGrid grid;
    grid.epsilon = epsilon;
    grid.range = epsilon / h_sup_norm;
    const auto betas = symmetric_linspace(grid.range, kBetaSteps);
    const auto gammas = symmetric_linspace(grid.range, kGammaSteps);
    grid.pairs.reserve(betas.size() * gammas.size());
    for (double b : betas)
        for (double g : gammas) grid.pairs.push_back(LayerParams{b, g});
    return grid;
}

RoundRecord make_record(int p, const StateVector& state, const ObjectiveTable& table, LayerParams chosen,
                        std::size_t chosen_index) {
    RoundRecord r;
    r.p = p;
    r.chosen_beta = chosen.beta;
    r.chosen_gamma = chosen.gamma;
    r.chosen_index = chosen_index;
    r.f_value = expectation(state, table);
    r.success_prob = success_probability(state, table.argmin_set());
    const auto ratios = approximation_ratios(state, table);
    r.approx_ratio_raw = ratios.raw;
    r.approx_ratio_norm = ratios.normalized;
    r.grad_b_mag = std::abs(grad_B(state, table));
    return r;
}

StepResult step(const StateVector& state, const CandidateGrid& grid, const TracelessObjective& c,
                const ObjectiveTable& table, int p, int threads, std::optional<double> current_value) {
    if (state.n_bits() != c.n_bits() || state.n_bits() != table.n_bits()) {
        throw std::invalid_argument("step: dimension mismatch");
    }
    if (grid.pairs.empty()) throw std::invalid_argument("step: empty grid");

    // Phase diagonals keyed by distinct gamma; the grid has only a handful.
    std::vector<double> gammas;
    for (const auto& layer : grid.pairs)
        if (std::find(gammas.begin(), gammas.end(), layer.gamma) == gammas.end()) gammas.push_back(layer.gamma);
    std::vector<std::vector<Complex>> phases;
    phases.reserve(gammas.size());
    for (double g : gammas) phases.push_back(phase_separator_diagonal(g, c));
    auto phase_for = [&](double g) -> std::span<const Complex> {
        return phases[static_cast<std::size_t>(std::find(gammas.begin(), gammas.end(), g) - gammas.begin())];
    };

    // U_C commutes with H, so every beta = 0 candidate has exactly the current value. Using that
    // value (not a re-evaluation with rounding noise) lets ties fall to the lowest grid index.
    const double current = current_value ? *current_value : expectation(state, table);
    const std::size_t m = grid.pairs.size();
    std::vector<double> values(m);
    auto evaluate = [&](std::size_t i) {
        const auto& layer = grid.pairs[i];
        values[i] = layer.beta == 0.0 ? current
                                      : expectation(candidate_state(state, layer, phase_for(layer.gamma)), table);
    };
    const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, static_cast<int>(m)));
    if (workers == 1) {
        for (std::size_t i = 0; i < m; ++i) evaluate(i);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < m; i += workers) evaluate(i);
            });
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (values[i] < values[best]) best = i;

    const auto& chosen = grid.pairs[best];
    StateVector next = candidate_state(state, chosen, phase_for(chosen.gamma));
    RoundRecord record = make_record(p, next, table, chosen, best);
    record.f_value = values[best];
    return StepResult{std::move(next), record};
}

std::string_view to_string(InitialKind kind) {
    switch (kind) {
        case InitialKind::plus: return "plus";
        case InitialKind::near_eigenstate: return "near_eigenstate";
        case InitialKind::near_trap: return "near_trap";
    }
    throw std::invalid_argument("unknown initial state kind");
}

InitialKind initial_kind_from_string(std::string_view name) {
    for (auto kind : {InitialKind::plus, InitialKind::near_eigenstate, InitialKind::near_trap}) {
        if (to_string(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown initial state kind '" + std::string(name) + "'");
}

ObjectiveTable make_objective(const ObjectiveSpec& spec) {
    auto build = [&]() -> ObjectiveTable {
        switch (spec.kind) {
            case ObjectiveKind::uniform: return gen_uniform(spec.n_bits, spec.seed, spec.lo, spec.hi);
            case ObjectiveKind::bimodal: return gen_bimodal(spec.n_bits, spec.seed, spec.lo, spec.hi);
            case ObjectiveKind::qubo: return gen_qubo(spec.n_bits, spec.seed);
            case ObjectiveKind::maxcut: {
                auto table = gen_maxcut(gen_random_graph(spec.n_bits, spec.edge_prob, spec.seed));
                return ObjectiveTable(table.n_bits(), {table.values().begin(), table.values().end()},
                                      ObjectiveKind::maxcut, spec.seed);
            }
            case ObjectiveKind::constant: return gen_constant(spec.n_bits, spec.constant_value);
            case ObjectiveKind::custom:
                if (spec.values.empty()) break;
                return ObjectiveTable(spec.n_bits, spec.values);
        }
        throw std::invalid_argument("custom objective needs explicit values");
    };
    auto table = build();
    if (spec.normalize && table.sup_norm() > 0.0) return normalize_sup(table);
    return table;
}

void validate(const SearchConfig& config) {
    if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) throw std::invalid_argument("epsilon must be > 0");
    if (config.max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
    if (config.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
    if (config.threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (config.initial.kind != InitialKind::plus && !(config.initial.delta > 0.0 && config.initial.delta < 1.0)) {
        throw std::invalid_argument("delta must be in (0, 1)");
    }
    check_n_bits(config.objective.n_bits);
}

SearchResult run(const SearchConfig& config, const ObjectiveTable& table) {
    validate(config);
    const int n = table.n_bits();
    std::optional<BitString> trap;
    StateVector state = [&] {
        switch (config.initial.kind) {
            case InitialKind::plus: return plus_state(n);
            case InitialKind::near_eigenstate:
                return near_eigenstate_init(BitString(config.initial.z, n), config.initial.delta);
            case InitialKind::near_trap: {
                trap = pick_trap_string(table);
                if (!trap) throw NoTrapError("no trap: instance has no non-optimal string with mu > 0");
                return near_eigenstate_init(*trap, config.initial.delta);
            }
        }
        throw std::invalid_argument("unknown initial state kind");
    }();

    const auto grid = build_grid(config.epsilon, table.sup_norm());
    const TracelessObjective c(table);

    SearchResult result{state, make_record(0, state, table), {}, trap};
    double active = result.initial.f_value;
    for (int p = 1; p <= config.max_rounds; ++p) {
        auto [next, record] = step(state, grid, c, table, p, config.threads, active);
        state = std::move(next);
        active = record.f_value;
        if (p % config.record_every == 0 || p == config.max_rounds) result.records.push_back(record);
    }
    result.final_state = std::move(state);
    return result;
}

SearchResult run(const SearchConfig& config) {
    validate(config);
    return run(config, make_objective(config.objective));
}

StateVector near_eigenstate_init(BitString z, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("near_eigenstate_init: delta must be in (0, 1)");
    const int n = z.n_bits();
    const std::size_t dim = std::size_t{1} << n;
    const double plus_amp = delta / std::sqrt(static_cast<double>(dim));
    std::vector<Complex> amps(dim, Complex(plus_amp, 0.0));
    amps[z.index()] += 1.0;
    return StateVector(n, std::move(amps));
}

std::optional<BitString> pick_trap_string(const ObjectiveTable& table) {
    std::optional<BitString> best;
    double best_mu = 0.0;
    for (std::size_t z = 0; z < table.size(); ++z) {
        if (table.is_optimal(z)) continue;
        const BitString s(z, table.n_bits());
        const double m = mu(table, s);
        if (m > best_mu) {
            best_mu = m;
            best = s;
        }
    }
    return best;
}

}  // namespace deepqaoa
