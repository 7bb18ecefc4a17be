#ifndef DEEPQAOA_EXPERIMENT_HPP_
#define DEEPQAOA_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deepqaoa/search.hpp"

namespace deepqaoa {

inline constexpr int kSchemaVersion = 1;

struct OutputOptions {
    std::string dir = "out";
    bool csv = true;
    bool json = true;
};

struct LandscapeOptions {
    std::optional<std::size_t> sample_size;  // empty: exhaustive
    std::uint64_t seed = 0;
    int norm_iters = 200;
};

struct SeveringOptions {
    double tol = 1e-9;
    int closure_depth = 16;  // closure probe runs only for N <= 3
};

struct TrapDemoOptions {
    double epsilon = 0.001;
    int max_rounds = 100;
    double delta = 0.1;
};

struct SweepOptions {
    std::vector<double> epsilons{0.01, 0.1, 1.0};
};

/// Everything one CLI invocation needs. Stored as an INI file with one section per concern:
/// [objective] [search] [output] [landscape] [severing] [trap_demo] [sweep].
struct ExperimentConfig {
    SearchConfig search;
    OutputOptions output;
    LandscapeOptions landscape;
    SeveringOptions severing;
    TrapDemoOptions trap_demo;
    SweepOptions sweep;
};

/// Throws std::invalid_argument on unknown sections/keys or unparsable values.
ExperimentConfig read_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);
void write_config(std::ostream& out, const ExperimentConfig& config);

// Subcommands. Each writes its artifacts under config.output.dir and returns the process exit code.
int cmd_run(const ExperimentConfig& config, std::ostream& log);
int cmd_landscape(const ExperimentConfig& config, std::ostream& log);
int cmd_severing(const ExperimentConfig& config, std::ostream& log);
int cmd_trap_demo(const ExperimentConfig& config, std::ostream& log);
int cmd_sweep(const ExperimentConfig& config, std::ostream& log);

/// Length of the longest window of consecutive records whose success probabilities stay within tol
/// (max - min <= tol).
std::size_t longest_plateau(std::span<const RoundRecord> records, double tol);

}  // namespace deepqaoa

#endif  // DEEPQAOA_EXPERIMENT_HPP_
