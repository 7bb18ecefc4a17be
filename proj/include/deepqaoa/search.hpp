#ifndef DEEPQAOA_SEARCH_HPP_
#define DEEPQAOA_SEARCH_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deepqaoa/objective.hpp"
#include "deepqaoa/statevector.hpp"

namespace deepqaoa {

/// The configured instance has no non-optimal string with mu > 0.
class NoTrapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kBetaSteps = 11;
inline constexpr int kGammaSteps = 5;

/// Single-layer trial parameters for one search round: beta in linspace(-r, r, 11) (outer),
/// gamma in linspace(-r, r, 5) (inner), r = epsilon / ||H||_inf. Contains (0, 0).
struct CandidateGrid {
    std::vector<LayerParams> pairs;
    double epsilon = 0.0;
    double range = 0.0;

    std::size_t identity_index() const { return (kBetaSteps / 2) * kGammaSteps + kGammaSteps / 2; }
};

CandidateGrid build_grid(double epsilon, double h_sup_norm);

struct RoundRecord {
    int p = 0;  // circuit depth after this round; 0 describes the initial state
    double chosen_beta = 0.0;
    double chosen_gamma = 0.0;
    std::size_t chosen_index = 0;
    double f_value = 0.0;  // active estimate: the value the selection saw for the chosen candidate
    double success_prob = 0.0;
    double approx_ratio_raw = 0.0;  // NaN when f_min == 0
    double approx_ratio_norm = 0.0;
    double grad_b_mag = 0.0;
};

/// Metrics of `state` reported as round p with the given choice.
RoundRecord make_record(int p, const StateVector& state, const ObjectiveTable& table, LayerParams chosen = {},
                        std::size_t chosen_index = 0);

struct StepResult {
    StateVector state;
    RoundRecord record;
};

/// One greedy round: evaluate F after U_B(beta) U_C(gamma) for every grid pair, keep the minimum
/// (lowest index on ties). `current_value` is the active estimate for `state` (recomputed when
/// absent); candidates with beta = 0 are assigned it exactly. The record's f_value is the chosen
/// candidate's value. `threads` > 1 evaluates candidates concurrently; the choice is unaffected.
StepResult step(const StateVector& state, const CandidateGrid& grid, const TracelessObjective& c,
                const ObjectiveTable& table, int p = 1, int threads = 1,
                std::optional<double> current_value = std::nullopt);

enum class InitialKind { plus, near_eigenstate, near_trap };

struct InitialStateSpec {
    InitialKind kind = InitialKind::plus;
    std::uint32_t z = 0;  // near_eigenstate only
    double delta = 0.1;   // near_eigenstate and near_trap
};

std::string_view to_string(InitialKind kind);
InitialKind initial_kind_from_string(std::string_view name);

struct ObjectiveSpec {
    ObjectiveKind kind = ObjectiveKind::qubo;
    int n_bits = 9;
    std::uint64_t seed = 1;
    double lo = 0.0;
    double hi = 1.0;
    double edge_prob = 0.5;       // maxcut
    double constant_value = 0.0;  // constant
    std::vector<double> values;   // custom: the full table, 2^n_bits entries
    bool normalize = true;        // scale to ||f||_inf = 1 after generation
};

/// Builds the table for a spec. Custom specs must carry their values.
ObjectiveTable make_objective(const ObjectiveSpec& spec);

struct SearchConfig {
    ObjectiveSpec objective;
    double epsilon = 0.1;
    int max_rounds = 1000;
    InitialStateSpec initial;
    std::uint64_t rng_seed = 0;  // echoed in outputs; the routine itself draws no random numbers
    int record_every = 1;
    int threads = 1;
};

void validate(const SearchConfig& config);

struct SearchResult {
    StateVector final_state;
    RoundRecord initial;               // p = 0
    std::vector<RoundRecord> records;  // every record_every rounds plus the last
    std::optional<BitString> trap_string;
};

/// Runs the search on a caller-supplied table; the table is used as given (no normalization).
SearchResult run(const SearchConfig& config, const ObjectiveTable& table);

/// Generates (and normalizes, if requested) the configured objective, then runs.
SearchResult run(const SearchConfig& config);

/// normalize(|z> + delta |+>).
StateVector near_eigenstate_init(BitString z, double delta);

/// Non-optimal z with the largest mu(z) > 0, lowest index on ties; nullopt when no such z exists.
std::optional<BitString> pick_trap_string(const ObjectiveTable& table);

}  // namespace deepqaoa

#endif  // DEEPQAOA_SEARCH_HPP_
