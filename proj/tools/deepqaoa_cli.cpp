#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "deepqaoa/experiment.hpp"

using namespace deepqaoa;

int main(int argc, char** argv) {
    CLI::App app{"Deep-circuit QAOA local search and landscape diagnostics"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;

    struct Command {
        const char* name;
        const char* help;
        int (*fn)(const ExperimentConfig&, std::ostream&);
    };
    const Command commands[] = {
        {"run", "Greedy grid search from the configured initial state", cmd_run},
        {"landscape", "mu-f diagram and summary statistics", cmd_landscape},
        {"severing", "Check distinct values and resonances; Lie closure probe for N <= 3", cmd_severing},
        {"trap-demo", "Search started next to the most trap-like non-optimal eigenstate", cmd_trap_demo},
        {"sweep", "Repeat the search over a list of step sizes", cmd_sweep},
    };
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", config_path, "INI config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
        sub->add_option("--seed", seed, "Objective seed (overrides [objective] seed)");
        sub->add_option("--threads", threads, "Candidate-evaluation threads")->check(CLI::PositiveNumber);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig config = load_config(config_path);
        if (out_dir) config.output.dir = *out_dir;
        if (seed) config.search.objective.seed = *seed;
        if (threads) config.search.threads = *threads;
        for (const auto& c : commands) {
            if (app.got_subcommand(c.name)) return c.fn(config, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
