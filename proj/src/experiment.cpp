#include "deepqaoa/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include "deepqaoa/landscape.hpp"
#include "deepqaoa/metrics.hpp"
#include "deepqaoa/universality.hpp"

namespace deepqaoa {

namespace pt = boost::property_tree;
using Json = nlohmann::ordered_json;

namespace {

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, end);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: '" + key + "' expects a number, got '" + text + "'");
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw std::invalid_argument("config: '" + key + "' expects a non-negative integer, got '" + text + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    int v = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + text + "'");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw std::invalid_argument("config: '" + key + "' expects true/false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string join_doubles(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += format_double(xs[i]);
    }
    return out;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"objective", {"kind", "n_bits", "seed", "lo", "hi", "edge_prob", "constant_value", "normalize", "values"}},
        {"search", {"epsilon", "max_rounds", "record_every", "initial", "initial_z", "delta", "rng_seed", "threads"}},
        {"output", {"dir", "formats"}},
        {"landscape", {"sample_size", "seed", "norm_iters"}},
        {"severing", {"tol", "closure_depth"}},
        {"trap_demo", {"epsilon", "max_rounds", "delta"}},
        {"sweep", {"epsilons"}},
    };
    return keys;
}

Json config_json(const ExperimentConfig& c) {
    const auto& s = c.search;
    Json j;
    j["objective"] = {{"kind", to_string(s.objective.kind)},   {"n_bits", s.objective.n_bits},
                      {"seed", s.objective.seed},              {"lo", s.objective.lo},
                      {"hi", s.objective.hi},                  {"edge_prob", s.objective.edge_prob},
                      {"constant_value", s.objective.constant_value}, {"normalize", s.objective.normalize}};
    if (!s.objective.values.empty()) j["objective"]["values"] = s.objective.values;
    j["search"] = {{"epsilon", s.epsilon},         {"max_rounds", s.max_rounds},
                   {"record_every", s.record_every}, {"initial", to_string(s.initial.kind)},
                   {"initial_z", s.initial.z},     {"delta", s.initial.delta},
                   {"rng_seed", s.rng_seed}};
    j["landscape"] = {{"sample_size", c.landscape.sample_size.value_or(0)},
                      {"seed", c.landscape.seed},
                      {"norm_iters", c.landscape.norm_iters}};
    j["severing"] = {{"tol", c.severing.tol}, {"closure_depth", c.severing.closure_depth}};
    j["trap_demo"] = {{"epsilon", c.trap_demo.epsilon},
                      {"max_rounds", c.trap_demo.max_rounds},
                      {"delta", c.trap_demo.delta}};
    j["sweep"] = {{"epsilons", c.sweep.epsilons}};
    return j;
}

Json objective_json(const ObjectiveTable& table) {
    Json argmin = Json::array();
    for (const auto& z : table.argmin_set()) argmin.push_back(z.value());
    return {{"kind", to_string(table.kind())}, {"n_bits", table.n_bits()}, {"seed", table.seed()},
            {"f_min", table.f_min()},          {"f_max", table.f_max()},     {"mean", table.mean()},
            {"sup_norm", table.sup_norm()},    {"argmin", argmin}};
}

Json record_json(const RoundRecord& r) {
    Json j{{"p", r.p},
           {"beta", r.chosen_beta},
           {"gamma", r.chosen_gamma},
           {"f_value", r.f_value},
           {"success_prob", r.success_prob}};
    if (std::isnan(r.approx_ratio_raw)) {
        j["approx_ratio_raw"] = nullptr;
    } else {
        j["approx_ratio_raw"] = r.approx_ratio_raw;
    }
    j["approx_ratio_norm"] = r.approx_ratio_norm;
    j["grad_b_mag"] = r.grad_b_mag;
    return j;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void write_json(const std::filesystem::path& path, const Json& j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

// Shared by run, trap-demo and every sweep point.
Json write_search_outputs(const std::filesystem::path& dir, const ExperimentConfig& config, const std::string& command,
                          const SearchConfig& search, const ObjectiveTable& table, const SearchResult& result) {
    std::filesystem::create_directories(dir);
    if (config.output.csv) {
        auto rec = open_output(dir / "records.csv");
        write_records_csv(rec, result.records);
        auto dist = open_output(dir / "distribution.csv");
        write_distribution_csv(dist, outcome_distribution(result.final_state));
    }
    const RoundRecord& last = result.records.back();
    Json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["command"] = command;
    summary["epsilon"] = search.epsilon;
    summary["rounds"] = search.max_rounds;
    summary["objective"] = objective_json(table);
    summary["initial"] = record_json(result.initial);
    summary["final"] = record_json(last);
    summary["success_prob"] = last.success_prob;
    summary["success_prob_change"] = last.success_prob - result.initial.success_prob;
    summary["longest_plateau_1e-9"] = longest_plateau(result.records, 1e-9);
    if (result.trap_string) {
        const auto dist = outcome_distribution(result.final_state);
        summary["trap_string"] = result.trap_string->value();
        summary["trap_weight"] = dist.probabilities[result.trap_string->index()];
        summary["trap_mu"] = mu(table, *result.trap_string);
    }
    Json echoed = config_json(config);
    echoed["search"]["epsilon"] = search.epsilon;
    echoed["search"]["max_rounds"] = search.max_rounds;
    echoed["search"]["initial"] = to_string(search.initial.kind);
    echoed["search"]["delta"] = search.initial.delta;
    summary["config"] = echoed;
    if (config.output.json) write_json(dir / "summary.json", summary);
    return summary;
}

}  // namespace

ExperimentConfig read_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
        auto it = known_keys().find(section);
        if (it == known_keys().end() || body.empty()) {
            throw std::invalid_argument("config: unknown section or top-level key '" + section + "'");
        }
        for (const auto& [key, value] : body) {
            if (!it->second.count(key)) throw std::invalid_argument("config: unknown key '" + section + "." + key + "'");
        }
    }

    ExperimentConfig c;
    auto get = [&](const std::string& path) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return *v;
        return std::nullopt;
    };
    auto& obj = c.search.objective;
    if (auto v = get("objective.kind")) obj.kind = objective_kind_from_string(*v);
    if (auto v = get("objective.n_bits")) obj.n_bits = parse_int("objective.n_bits", *v);
    if (auto v = get("objective.seed")) obj.seed = parse_uint("objective.seed", *v);
    if (auto v = get("objective.lo")) obj.lo = parse_double("objective.lo", *v);
    if (auto v = get("objective.hi")) obj.hi = parse_double("objective.hi", *v);
    if (auto v = get("objective.edge_prob")) obj.edge_prob = parse_double("objective.edge_prob", *v);
    if (auto v = get("objective.constant_value")) obj.constant_value = parse_double("objective.constant_value", *v);
    if (auto v = get("objective.normalize")) obj.normalize = parse_bool("objective.normalize", *v);
    if (auto v = get("objective.values")) {
        for (const auto& item : split_list(*v)) obj.values.push_back(parse_double("objective.values", item));
    }

    auto& s = c.search;
    if (auto v = get("search.epsilon")) s.epsilon = parse_double("search.epsilon", *v);
    if (auto v = get("search.max_rounds")) s.max_rounds = parse_int("search.max_rounds", *v);
    if (auto v = get("search.record_every")) s.record_every = parse_int("search.record_every", *v);
    if (auto v = get("search.initial")) s.initial.kind = initial_kind_from_string(*v);
    if (auto v = get("search.initial_z")) s.initial.z = static_cast<std::uint32_t>(parse_uint("search.initial_z", *v));
    if (auto v = get("search.delta")) s.initial.delta = parse_double("search.delta", *v);
    if (auto v = get("search.rng_seed")) s.rng_seed = parse_uint("search.rng_seed", *v);
    if (auto v = get("search.threads")) s.threads = parse_int("search.threads", *v);

    if (auto v = get("output.dir")) c.output.dir = *v;
    if (auto v = get("output.formats")) {
        c.output.csv = c.output.json = false;
        for (const auto& f : split_list(*v)) {
            if (f == "csv") {
                c.output.csv = true;
            } else if (f == "json") {
                c.output.json = true;
            } else {
                throw std::invalid_argument("config: unknown output format '" + f + "'");
            }
        }
    }

    if (auto v = get("landscape.sample_size")) {
        const auto n = parse_uint("landscape.sample_size", *v);
        c.landscape.sample_size = n == 0 ? std::nullopt : std::optional<std::size_t>(n);
    }
    if (auto v = get("landscape.seed")) c.landscape.seed = parse_uint("landscape.seed", *v);
    if (auto v = get("landscape.norm_iters")) c.landscape.norm_iters = parse_int("landscape.norm_iters", *v);

    if (auto v = get("severing.tol")) c.severing.tol = parse_double("severing.tol", *v);
    if (auto v = get("severing.closure_depth")) c.severing.closure_depth = parse_int("severing.closure_depth", *v);

    if (auto v = get("trap_demo.epsilon")) c.trap_demo.epsilon = parse_double("trap_demo.epsilon", *v);
    if (auto v = get("trap_demo.max_rounds")) c.trap_demo.max_rounds = parse_int("trap_demo.max_rounds", *v);
    if (auto v = get("trap_demo.delta")) c.trap_demo.delta = parse_double("trap_demo.delta", *v);

    if (auto v = get("sweep.epsilons")) {
        c.sweep.epsilons.clear();
        for (const auto& item : split_list(*v)) c.sweep.epsilons.push_back(parse_double("sweep.epsilons", item));
        if (c.sweep.epsilons.empty()) throw std::invalid_argument("config: sweep.epsilons is empty");
    }

    validate(c.search);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path.string());
    return read_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& c) {
    const auto& o = c.search.objective;
    const auto& s = c.search;
    out << "[objective]\n"
        << "kind = " << to_string(o.kind) << '\n'
        << "n_bits = " << o.n_bits << '\n'
        << "seed = " << o.seed << '\n'
        << "lo = " << format_double(o.lo) << '\n'
        << "hi = " << format_double(o.hi) << '\n'
        << "edge_prob = " << format_double(o.edge_prob) << '\n'
        << "constant_value = " << format_double(o.constant_value) << '\n'
        << "normalize = " << (o.normalize ? "true" : "false") << '\n';
    if (!o.values.empty()) out << "values = " << join_doubles(o.values) << '\n';
    out << '\n';
    out << "[search]\n"
        << "epsilon = " << format_double(s.epsilon) << '\n'
        << "max_rounds = " << s.max_rounds << '\n'
        << "record_every = " << s.record_every << '\n'
        << "initial = " << to_string(s.initial.kind) << '\n'
        << "initial_z = " << s.initial.z << '\n'
        << "delta = " << format_double(s.initial.delta) << '\n'
        << "rng_seed = " << s.rng_seed << '\n'
        << "threads = " << s.threads << "\n\n";
    std::string formats;
    if (c.output.csv) formats = "csv";
    if (c.output.json) formats += formats.empty() ? "json" : ",json";
    out << "[output]\n"
        << "dir = " << c.output.dir << '\n'
        << "formats = " << formats << "\n\n";
    out << "[landscape]\n"
        << "sample_size = " << c.landscape.sample_size.value_or(0) << '\n'
        << "seed = " << c.landscape.seed << '\n'
        << "norm_iters = " << c.landscape.norm_iters << "\n\n";
    out << "[severing]\n"
        << "tol = " << format_double(c.severing.tol) << '\n'
        << "closure_depth = " << c.severing.closure_depth << "\n\n";
    out << "[trap_demo]\n"
        << "epsilon = " << format_double(c.trap_demo.epsilon) << '\n'
        << "max_rounds = " << c.trap_demo.max_rounds << '\n'
        << "delta = " << format_double(c.trap_demo.delta) << "\n\n";
    out << "[sweep]\n"
        << "epsilons = " << join_doubles(c.sweep.epsilons) << '\n';
}

std::size_t longest_plateau(std::span<const RoundRecord> records, double tol) {
    std::size_t best = 0;
    for (std::size_t start = 0; start < records.size(); ++start) {
        double lo = records[start].success_prob;
        double hi = lo;
        std::size_t end = start + 1;
        while (end < records.size()) {
            const double s = records[end].success_prob;
            if (std::max(hi, s) - std::min(lo, s) > tol) break;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
            ++end;
        }
        best = std::max(best, end - start);
        if (end == records.size()) break;
    }
    return best;
}

int cmd_run(const ExperimentConfig& config, std::ostream& log) {
    const auto table = make_objective(config.search.objective);
    const auto result = run(config.search, table);
    write_search_outputs(config.output.dir, config, "run", config.search, table, result);
    log << "run: " << config.search.max_rounds << " rounds, final success_prob "
        << format_double(result.records.back().success_prob) << " -> " << config.output.dir << '\n';
    return 0;
}

int cmd_trap_demo(const ExperimentConfig& config, std::ostream& log) {
    const auto table = make_objective(config.search.objective);
    SearchConfig search = config.search;
    search.epsilon = config.trap_demo.epsilon;
    search.max_rounds = config.trap_demo.max_rounds;
    search.initial = InitialStateSpec{InitialKind::near_trap, 0, config.trap_demo.delta};
    const auto result = run(search, table);
    const auto summary = write_search_outputs(config.output.dir, config, "trap-demo", search, table, result);
    log << "trap-demo: trap string " << result.trap_string->value() << ", final weight "
        << format_double(summary["trap_weight"].get<double>()) << ", success_prob change "
        << format_double(summary["success_prob_change"].get<double>()) << '\n';
    return 0;
}

int cmd_sweep(const ExperimentConfig& config, std::ostream& log) {
    const auto table = make_objective(config.search.objective);
    const std::filesystem::path root = config.output.dir;
    std::filesystem::create_directories(root);
    Json comparison = Json::array();
    for (std::size_t k = 0; k < config.sweep.epsilons.size(); ++k) {
        SearchConfig search = config.search;
        search.epsilon = config.sweep.epsilons[k];
        const auto result = run(search, table);
        const std::string name = "eps_" + format_double(search.epsilon);
        const auto summary = write_search_outputs(root / name, config, "sweep", search, table, result);
        comparison.push_back({{"epsilon", search.epsilon},
                              {"dir", name},
                              {"final", summary["final"]},
                              {"longest_plateau_1e-9", summary["longest_plateau_1e-9"]}});
        log << "sweep: epsilon " << format_double(search.epsilon) << " final success_prob "
            << format_double(result.records.back().success_prob) << '\n';
    }
    if (config.output.json) {
        Json summary;
        summary["schema_version"] = kSchemaVersion;
        summary["command"] = "sweep";
        summary["objective"] = objective_json(table);
        summary["runs"] = comparison;
        summary["config"] = config_json(config);
        write_json(root / "summary.json", summary);
    }
    return 0;
}

int cmd_landscape(const ExperimentConfig& config, std::ostream& log) {
    const auto table = make_objective(config.search.objective);
    const auto points = mu_f_diagram(table, config.landscape.sample_size, config.landscape.seed);
    const auto stats = diagram_stats(points, table.argmin_set());
    const std::filesystem::path dir = config.output.dir;
    std::filesystem::create_directories(dir);
    if (config.output.csv) {
        auto out = open_output(dir / "mu_f.csv");
        write_diagram_csv(out, points);
    }
    if (config.output.json) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "landscape";
        j["objective"] = objective_json(table);
        j["n_points"] = points.size();
        j["exhaustive"] = !config.landscape.sample_size.has_value();
        j["frac_mu_positive"] = stats.frac_mu_positive;
        j["pearson_f_mu"] = stats.pearson_f_mu;
        j["correlation_degenerate"] = stats.correlation_degenerate;
        j["argmax_mu"] = stats.argmax_mu.value();
        j["max_mu"] = stats.max_mu;
        j["deepest_is_largest"] = stats.deepest_is_largest;
        j["f2b_norm_bound"] = f2b_norm_bound(table);
        if (table.n_bits() <= 16) j["f2b_norm_estimate"] = f2b_norm_estimate(table, config.landscape.norm_iters);
        j["histogram"] = {{"bins", kHistogramBins},
                          {"f_range", {stats.f_lo, stats.f_hi}},
                          {"mu_range", {stats.mu_lo, stats.mu_hi}},
                          {"counts", stats.histogram}};
        j["config"] = config_json(config);
        write_json(dir / "stats.json", j);
    }
    log << "landscape: " << points.size() << " points, frac mu>0 " << format_double(stats.frac_mu_positive)
        << ", deepest_is_largest " << (stats.deepest_is_largest ? "true" : "false") << '\n';
    return 0;
}

int cmd_severing(const ExperimentConfig& config, std::ostream& log) {
    const auto table = make_objective(config.search.objective);
    const auto report = check_severing(table, config.severing.tol);
    const std::filesystem::path dir = config.output.dir;
    std::filesystem::create_directories(dir);
    if (config.output.json) {
        std::ostringstream body;
        write_severing_json(body, report);
        Json j = Json::parse(body.str());
        if (table.n_bits() <= kMaxClosureBits) {
            const auto closure = lie_closure(table, config.severing.closure_depth);
            j["lie_closure_dim"] = closure.dimension;
            j["lie_closure_converged"] = closure.converged;
            j["full_algebra_dim"] = (std::size_t{1} << (2 * table.n_bits())) - 1;
        }
        j["objective"] = objective_json(table);
        write_json(dir / "severing.json", j);
    }
    switch (report.violation) {
        case SeveringViolation::none: log << "severing\n"; break;
        case SeveringViolation::degenerate_values:
            log << "not severing: degenerate values f(" << report.first.first << ") = f(" << report.first.second
                << ")\n";
            break;
        case SeveringViolation::degenerate_resonance:
            log << "not severing: degenerate resonance f(" << report.first.first << ") - f(" << report.first.second
                << ") = f(" << report.second.first << ") - f(" << report.second.second << ")\n";
            break;
    }
    return 0;
}

}  // namespace deepqaoa
