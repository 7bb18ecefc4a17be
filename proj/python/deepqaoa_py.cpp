#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "deepqaoa/experiment.hpp"
#include "deepqaoa/landscape.hpp"
#include "deepqaoa/metrics.hpp"
#include "deepqaoa/search.hpp"
#include "deepqaoa/universality.hpp"

namespace py = pybind11;
using namespace deepqaoa;

namespace {

py::dict record_dict(const RoundRecord& r) {
    py::dict d;
    d["p"] = r.p;
    d["beta"] = r.chosen_beta;
    d["gamma"] = r.chosen_gamma;
    d["f_value"] = r.f_value;
    d["success_prob"] = r.success_prob;
    d["approx_ratio_raw"] = r.approx_ratio_raw;
    d["approx_ratio_norm"] = r.approx_ratio_norm;
    d["grad_b_mag"] = r.grad_b_mag;
    return d;
}

std::vector<double> values_of(const ObjectiveTable& t) { return {t.values().begin(), t.values().end()}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Deep-circuit QAOA landscape and greedy search simulator";

    py::register_exception<NotAValleyError>(m, "NotAValleyError", PyExc_ValueError);
    py::register_exception<NoTrapError>(m, "NoTrapError", PyExc_RuntimeError);

    py::class_<ObjectiveTable>(m, "ObjectiveTable")
        .def(py::init([](int n_bits, std::vector<double> values) { return ObjectiveTable(n_bits, std::move(values)); }),
             py::arg("n_bits"), py::arg("values"))
        .def_property_readonly("n_bits", &ObjectiveTable::n_bits)
        .def_property_readonly("values", &values_of)
        .def_property_readonly("f_min", &ObjectiveTable::f_min)
        .def_property_readonly("f_max", &ObjectiveTable::f_max)
        .def_property_readonly("sup_norm", &ObjectiveTable::sup_norm)
        .def_property_readonly("kind", [](const ObjectiveTable& t) { return std::string(to_string(t.kind())); })
        .def_property_readonly("argmin", [](const ObjectiveTable& t) {
            std::vector<std::uint32_t> out;
            for (const auto& z : t.argmin_set()) out.push_back(z.value());
            return out;
        })
        .def("__len__", &ObjectiveTable::size)
        .def("__getitem__", [](const ObjectiveTable& t, std::size_t z) {
            if (z >= t.size()) throw py::index_error();
            return t[z];
        });

    m.def("gen_uniform", &gen_uniform, py::arg("n_bits"), py::arg("seed"), py::arg("lo") = 0.0, py::arg("hi") = 1.0);
    m.def("gen_bimodal", &gen_bimodal, py::arg("n_bits"), py::arg("seed"), py::arg("lo") = 0.0, py::arg("hi") = 1.0);
    m.def("gen_qubo", &gen_qubo, py::arg("n_bits"), py::arg("seed"));
    m.def("gen_constant", &gen_constant, py::arg("n_bits"), py::arg("value"));
    m.def(
        "gen_maxcut",
        [](int n_vertices, std::vector<std::pair<int, int>> edges) { return gen_maxcut(make_graph(n_vertices, edges)); },
        py::arg("n_vertices"), py::arg("edges"));
    m.def(
        "gen_random_graph",
        [](int n, double p, std::uint64_t seed) { return gen_random_graph(n, p, seed).edges; }, py::arg("n_vertices"),
        py::arg("edge_prob"), py::arg("seed"));
    m.def("normalize_sup", &normalize_sup);

    py::class_<StateVector>(m, "StateVector")
        .def(py::init<int, std::vector<Complex>>(), py::arg("n_bits"), py::arg("amplitudes"))
        .def_static("basis", [](std::uint32_t z, int n) { return StateVector::basis(BitString(z, n)); }, py::arg("z"),
                    py::arg("n_bits"))
        .def_property_readonly("n_bits", &StateVector::n_bits)
        .def_property_readonly("amplitudes", [](const StateVector& s) {
            return std::vector<Complex>(s.amplitudes().begin(), s.amplitudes().end());
        })
        .def("probabilities", [](const StateVector& s) { return outcome_distribution(s).probabilities; });

    m.def("plus_state", &plus_state, py::arg("n_bits"));
    m.def(
        "apply_mixer", [](StateVector s, double beta) { apply_mixer(s, beta); return s; }, py::arg("state"),
        py::arg("beta"), "Returns exp(-i beta B) applied to a copy of the state.");
    m.def(
        "apply_phase_separator",
        [](StateVector s, double gamma, const ObjectiveTable& t) {
            apply_phase_separator(s, gamma, TracelessObjective(t));
            return s;
        },
        py::arg("state"), py::arg("gamma"), py::arg("table"));
    m.def("expectation", &expectation, py::arg("state"), py::arg("table"));
    m.def("grad_B", &grad_B, py::arg("state"), py::arg("table"));
    m.def("hess_B", &hess_B, py::arg("state"), py::arg("table"));
    m.def(
        "success_probability",
        [](const StateVector& s, const ObjectiveTable& t) { return success_probability(s, t.argmin_set()); },
        py::arg("state"), py::arg("table"));

    m.def(
        "mu", [](const ObjectiveTable& t, std::uint32_t z) { return mu(t, BitString(z, t.n_bits())); },
        py::arg("table"), py::arg("z"));
    m.def("mu_all", &mu_all, py::arg("table"));
    m.def(
        "epsilon_bound", [](const ObjectiveTable& t, std::uint32_t z) { return epsilon_bound(t, BitString(z, t.n_bits())); },
        py::arg("table"), py::arg("z"));
    m.def("f2b_norm_bound", &f2b_norm_bound, py::arg("table"));
    m.def("f2b_norm_estimate", &f2b_norm_estimate, py::arg("table"), py::arg("iters") = 200);

    m.def(
        "run_search",
        [](const ObjectiveTable& table, double epsilon, int max_rounds, const std::string& initial, std::uint32_t z,
           double delta, int record_every) {
            SearchConfig cfg;
            cfg.epsilon = epsilon;
            cfg.max_rounds = max_rounds;
            cfg.record_every = record_every;
            cfg.initial = {initial_kind_from_string(initial), z, delta};
            cfg.objective.n_bits = table.n_bits();
            SearchResult result = [&] {
                py::gil_scoped_release release;
                return run(cfg, table);
            }();
            py::dict out;
            out["initial"] = record_dict(result.initial);
            py::list records;
            for (const auto& r : result.records) records.append(record_dict(r));
            out["records"] = records;
            out["final_state"] = result.final_state;
            out["trap_string"] = result.trap_string ? py::cast(result.trap_string->value()) : py::none();
            return out;
        },
        py::arg("table"), py::arg("epsilon") = 0.1, py::arg("max_rounds") = 1000, py::arg("initial") = "plus",
        py::arg("z") = 0, py::arg("delta") = 0.1, py::arg("record_every") = 1);
    m.def(
        "pick_trap_string",
        [](const ObjectiveTable& t) -> std::optional<std::uint32_t> {
            if (auto z = pick_trap_string(t)) return z->value();
            return std::nullopt;
        },
        py::arg("table"));

    m.def(
        "check_severing",
        [](const ObjectiveTable& t, double tol) {
            std::ostringstream ss;
            write_severing_json(ss, check_severing(t, tol));
            return ss.str();
        },
        py::arg("table"), py::arg("tol") = kDefaultSeveringTol, "Severing report as a JSON string.");
    m.def("lie_closure_dim", &lie_closure_dim, py::arg("table"), py::arg("max_depth") = 64);

    m.def(
        "run_command",
        [](const std::string& command, const std::string& config_path, std::optional<std::string> out) {
            auto config = load_config(config_path);
            if (out) config.output.dir = *out;
            std::ostringstream log;
            int code = 0;
            if (command == "run") code = cmd_run(config, log);
            else if (command == "landscape") code = cmd_landscape(config, log);
            else if (command == "severing") code = cmd_severing(config, log);
            else if (command == "trap-demo") code = cmd_trap_demo(config, log);
            else if (command == "sweep") code = cmd_sweep(config, log);
            else throw py::value_error("unknown command '" + command + "'");
            return py::make_tuple(code, log.str());
        },
        py::arg("command"), py::arg("config"), py::arg("out") = py::none(),
        "Runs a CLI subcommand in-process; returns (exit_code, log).");
}
