#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "esdg/diagnostics.hpp"
#include "esdg/experiments.hpp"

namespace py = pybind11;
using namespace esdg;

namespace {

py::dict report_to_dict(const RunReport& report) {
    py::dict d;
    d["times"] = report.times;
    d["entropy"] = report.entropy_series;
    d["mass"] = report.mass_series;
    d["min_cell_avg"] = report.min_avg_series;
    d["min_cell_value"] = report.min_value_series;
    d["final_time"] = report.final_time;
    d["steps"] = report.step_count;
    d["final_coeffs"] = report.final_u.coeffs;
    d["entropy_violations"] = report.entropy_violation_count;
    d["max_entropy_increase"] = report.max_entropy_increase;
    d["initial_mass"] = report.initial_mass;
    d["max_mass_drift"] = report.max_mass_drift;
    d["min_cell_average"] = report.min_cell_average;
    d["min_cell_value_overall"] = report.min_cell_value;
    d["first_negative_avg_time"] = report.first_negative_avg_time;
    return d;
}

RunConfig config_from_json_str(const std::string& text) {
    return parse_config(nlohmann::json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_esdg, m) {
    m.doc() = "entropy-satisfying DG solver for 1D nonlinear Fokker-Planck equations";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<LimiterFailure>(m, "LimiterFailure", PyExc_RuntimeError);
    py::register_exception<EvaluationDomainError>(m, "EvaluationDomainError", PyExc_RuntimeError);

    py::class_<Mesh>(m, "Mesh")
        .def_readonly("a", &Mesh::a)
        .def_readonly("b", &Mesh::b)
        .def_readonly("n_cells", &Mesh::n_cells)
        .def_readonly("h", &Mesh::h)
        .def_readonly("centers", &Mesh::centers)
        .def_readonly("interfaces", &Mesh::interfaces)
        .def("map_to_physical", &Mesh::map_to_physical);
    m.def("build_mesh", &build_mesh, py::arg("a"), py::arg("b"), py::arg("n_cells"));

    py::class_<DGField>(m, "DGField")
        .def_readonly("mesh", &DGField::mesh)
        .def_readonly("degree", &DGField::degree)
        .def_readwrite("coeffs", &DGField::coeffs)
        .def("cell_average", &DGField::cell_average)
        .def("eval", &DGField::eval, py::arg("cell"), py::arg("xi"))
        .def("__call__", [](const DGField& f, double x) {
            const double pos = (x - f.mesh.a) / f.mesh.h;
            int j = static_cast<int>(pos);
            j = std::max(0, std::min(f.mesh.n_cells - 1, j));
            const double xi = 2.0 * (x - f.mesh.centers[static_cast<std::size_t>(j)]) / f.mesh.h;
            return f.eval(j, std::max(-1.0, std::min(1.0, xi)));
        });

    py::class_<ModelSpec>(m, "ModelSpec")
        .def_readonly("name", &ModelSpec::name)
        .def_readonly("trivial_potential_quadratic_H",
                      &ModelSpec::trivial_potential_quadratic_H)
        .def("f", [](const ModelSpec& s, double u) { return s.f(u); })
        .def("h_entropy", [](const ModelSpec& s, double u) { return s.h_entropy(u); })
        .def("h_prime", [](const ModelSpec& s, double u) { return s.h_prime(u); })
        .def("phi", [](const ModelSpec& s, double x) { return s.phi(x); })
        .def("mobility", &ModelSpec::mobility)
        .def("entropy_density", &ModelSpec::entropy_density);
    m.def("make_model", &make_model, py::arg("name"),
          py::arg("params") = std::map<std::string, double>{});
    m.def("barenblatt", &barenblatt, py::arg("m"), py::arg("x"), py::arg("t"));

    m.def(
        "project_l2",
        [](const std::function<double(double)>& g, const Mesh& mesh, int degree) {
            return project_l2(g, mesh, Basis{degree}, gauss_quadrature(degree + 2));
        },
        py::arg("g"), py::arg("mesh"), py::arg("degree"));
    m.def(
        "compute_q",
        [](const DGField& u, const ModelSpec& model) {
            return compute_q(u, model, gauss_quadrature(u.degree + 2));
        },
        py::arg("u"), py::arg("model"));
    m.def(
        "semi_discrete_rhs",
        [](const DGField& u, const DGField& q, const ModelSpec& model, double beta0,
           double beta1) { return semi_discrete_rhs(u, q, model, {beta0, beta1}); },
        py::arg("u"), py::arg("q"), py::arg("model"), py::arg("beta0"), py::arg("beta1"));

    m.def(
        "reconstruct_positive",
        [](const DGField& u, double delta) {
            LimiterConfig config;
            config.delta = delta;
            return reconstruct_positive(u, config);
        },
        py::arg("u"), py::arg("delta") = 0.0);

    m.def("gamma_bound", &gamma_bound, py::arg("k"), py::arg("beta1"));
    m.def(
        "alpha_coefficients",
        [](double beta0, double beta1) {
            return alpha_coefficients({beta0, beta1});
        },
        py::arg("beta0"), py::arg("beta1"));
    m.def(
        "cfl_positivity",
        [](double beta0, double beta1, double f_max) {
            return cfl_positivity({beta0, beta1}, f_max);
        },
        py::arg("beta0"), py::arg("beta1"), py::arg("f_max"));
    m.def(
        "cfl_entropy",
        [](int k, double beta0, double beta1, double gamma, double hpp_max, double f_max,
           double h) { return cfl_entropy(k, {beta0, beta1}, gamma, hpp_max, f_max, h); },
        py::arg("k"), py::arg("beta0"), py::arg("beta1"), py::arg("gamma"), py::arg("hpp_max"),
        py::arg("f_max"), py::arg("h"));

    m.def(
        "entropy",
        [](const DGField& u, const ModelSpec& model) {
            return entropy(u, model, gauss_quadrature(u.degree + 2));
        },
        py::arg("u"), py::arg("model"));
    m.def("mass", &mass, py::arg("u"));
    m.def(
        "l1_error",
        [](const DGField& u, const std::function<double(double)>& ref) {
            return l1_error(u, ref);
        },
        py::arg("u"), py::arg("reference"));
    m.def("convergence_orders", &convergence_orders, py::arg("errors"), py::arg("hs"));

    m.def("preset_names", &preset_names);
    m.def(
        "run",
        [](const std::string& config_json, const std::string& out_dir) {
            const auto result = cmd_run(config_from_json_str(config_json), out_dir);
            py::dict d = report_to_dict(result.report);
            d["written_files"] = result.written_files;
            return d;
        },
        py::arg("config_json"), py::arg("out_dir") = std::string{},
        "Runs one solve from a JSON config string; returns the diagnostics report.");
    m.def(
        "converge",
        [](const std::string& config_json, const std::string& out_dir, int jobs) {
            const auto result = cmd_converge(config_from_json_str(config_json), out_dir, jobs);
            py::list rows;
            for (const auto& row : result.rows) {
                py::dict r;
                r["h"] = row.h;
                r["l1_error"] = row.l1;
                r["order"] = row.order;
                rows.append(r);
            }
            return rows;
        },
        py::arg("config_json"), py::arg("out_dir") = std::string{}, py::arg("jobs") = 1);
    m.def(
        "sweep_beta",
        [](const std::string& config_json, const std::string& out_dir, int jobs) {
            const auto result = cmd_sweep_beta(config_from_json_str(config_json), out_dir, jobs);
            py::list rows;
            for (const auto& row : result.rows) {
                py::dict r;
                r["beta0"] = row.beta0;
                r["beta1"] = row.beta1;
                r["negative_time"] = row.negative_time;
                rows.append(r);
            }
            return rows;
        },
        py::arg("config_json"), py::arg("out_dir") = std::string{}, py::arg("jobs") = 1);
    m.def(
        "barenblatt_experiment",
        [](const std::string& config_json, const std::string& out_dir) {
            const auto result = cmd_barenblatt(config_from_json_str(config_json), out_dir);
            py::dict d;
            d["l1_vs_exact"] = result.l1_vs_exact;
            d["exact_time"] = result.exact_time;
            d["min_value_with_limiter"] = result.min_value_limited;
            d["min_value_without_limiter"] = result.min_value_unlimited;
            d["report"] = report_to_dict(result.report);
            return d;
        },
        py::arg("config_json"), py::arg("out_dir") = std::string{});
}
