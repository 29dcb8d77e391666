#include "esdg/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "esdg/diagnostics.hpp"

namespace esdg {

using nlohmann::json;

namespace {

std::string fmt7(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7g", v);
    return buf;
}

FluxParams flux_for_degree(int k) {
    // beta0 must exceed the admissibility bound Gamma(k, beta1) for the
    // scheme to reach order k+1; for k = 1 that bound is 2
    if (k <= 1) return {2.0, 0.0};
    if (k == 2) return {4.0, 1.0 / 12.0};
    return {9.0, 0.25};
}

double c_of_k_default(int k) {
    // conservative constants: the explicit two-stage step is stable only up
    // to dt ~ 2 h^2 / (D C_k) with C_k growing ~ k^4; too-large constants
    // produce a quiet saturated instability rather than an obvious blow-up
    if (k <= 1) return 0.02;
    if (k == 2) return 0.005;
    return 0.001;
}

void deep_merge(json& base, const json& overlay) {
    if (!overlay.is_object() || !base.is_object()) {
        base = overlay;
        return;
    }
    for (auto it = overlay.begin(); it != overlay.end(); ++it) {
        if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object())
            deep_merge(base[it.key()], it.value());
        else
            base[it.key()] = it.value();
    }
}

json preset_json(const std::string& name) {
    json j;
    j["preset"] = name;
    if (name == "example1") {
        j["model"] = {{"name", "porous_medium"}, {"params", {{"m", 2.0}}}};
        j["domain"] = {{"a", -2.0}, {"b", 2.0}};
        j["n_cells"] = 40;
        j["degree"] = 2;
        j["flux"] = {{"beta0", 2.0}, {"beta1", 1.0 / 6.0}};
        j["time"] = {{"policy", "fixed_ck"}, {"c_of_k", 0.01}, {"t_end", 0.4}};
        j["limiter"] = {{"enabled", true}, {"delta", 0.0}, {"skip_zero_cells", true},
                        {"fallback", "error"}};
        j["initial"] = {{"name", "barenblatt"}, {"params", {{"m", 2.0}, {"t0", 0.1}}}};
    } else if (name == "example2" || name == "example2_trivial") {
        j["model"] = {{"name", "porous_medium"}, {"params", {{"m", 2.0}}}};
        j["domain"] = {{"a", -1.0}, {"b", 1.0}};
        j["n_cells"] = 10;
        j["degree"] = 2;
        j["flux"] = {{"beta0", 2.0}, {"beta1", 1.0 / 6.0}};
        j["time"] = {{"policy", "fixed_ck"}, {"c_of_k", 0.25}, {"t_end", 1000.0}};
        j["limiter"] = {{"enabled", true}, {"delta", 1e-10}, {"skip_zero_cells", false},
                        {"fallback", "track"}};
        j["initial"] = {{"name", "bump"}, {"params", {{"eps", 1e-5}}}};
        j["output"] = {{"series_every", 1000}};
    } else if (name == "example2_nontrivial") {
        j["model"] = {{"name", "porous_medium_quadratic_phi"}, {"params", {{"eps", 1e-5}}}};
        j["domain"] = {{"a", -1.0}, {"b", 1.0}};
        j["n_cells"] = 10;
        j["degree"] = 2;
        j["flux"] = {{"beta0", 2.0}, {"beta1", 1.0 / 6.0}};
        j["time"] = {{"policy", "fixed_ck"}, {"c_of_k", 0.25}, {"t_end", 1000.0}};
        j["limiter"] = {{"enabled", true}, {"delta", 1e-10}, {"skip_zero_cells", false},
                        {"fallback", "track"}};
        j["initial"] = {{"name", "bump"}, {"params", {{"eps", 1e-5}}}};
        j["beta1_list"] = {0.0, 1.0 / 12.0, 1.0 / 6.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0, 2.0, 3.0};
        j["output"] = {{"series_every", 1000}};
    } else if (name == "example3" || name == "example4") {
        const double m = name == "example3" ? 2.0 : 3.0;
        j["model"] = {{"name", "porous_medium_convection"}, {"params", {{"m", m}}}};
        j["domain"] = {{"a", -1.0}, {"b", 1.0}};
        j["n_cells"] = 20;
        j["degree"] = 2;
        j["flux"] = {{"beta0", 4.0}, {"beta1", 1.0 / 12.0}};
        // stiffness scales with the diffusion maximum m u^{m-1}: the m = 3
        // case needs a smaller step constant than m = 2
        j["time"] = {{"policy", "fixed_ck"}, {"c_of_k", m == 2.0 ? 0.005 : 0.002},
                     {"t_end", 1.0}};
        j["limiter"] = {{"enabled", true}, {"delta", 1e-10}, {"skip_zero_cells", false},
                        {"fallback", "error"}};
        j["initial"] = {{"name", "sine"},
                        {"params", {{"offset", m == 2.0 ? 0.5 : 1.0}, {"amplitude", 0.5}}}};
        j["ladder"] = {0.4, 0.2, 0.1, 0.05};
    } else if (name == "example5") {
        j["model"] = {{"name", "double_well"}, {"params", {{"nu", 1.0}, {"m", 2.0}}}};
        j["domain"] = {{"a", -2.0}, {"b", 2.0}};
        j["n_cells"] = 40;
        j["degree"] = 2;
        j["flux"] = {{"beta0", 4.0}, {"beta1", 1.0 / 12.0}};
        j["time"] = {{"policy", "fixed_ck"}, {"c_of_k", 0.05}, {"t_end", 1.0}};
        // vacuum regions form near the well shoulders; without the limiter
        // undershoots make the mobility negative and fine meshes blow up
        j["limiter"] = {{"enabled", true}, {"delta", 1e-10}, {"skip_zero_cells", false},
                        {"fallback", "track"}};
        j["initial"] = {{"name", "gaussian"}, {"params", {{"mass", 0.1}, {"var", 0.4}}}};
        j["ladder"] = {0.4, 0.2, 0.1, 0.05};
    } else if (name == "example5_decay") {
        j = preset_json("example5");
        j["preset"] = name;
        j["time"]["t_end"] = 40.0;
        j["limiter"] = {{"enabled", true}, {"delta", 1e-10}, {"skip_zero_cells", false},
                        {"fallback", "track"}};
        j["output"] = {{"series_every", 100}};
        j.erase("ladder");
    } else if (name == "example6_subcritical" || name == "example6_supercritical") {
        const bool super = name == "example6_supercritical";
        j["model"] = {{"name", "general_fp"}, {"params", {{"N", 3.0}}}};
        j["domain"] = {{"a", -6.0}, {"b", 6.0}};
        j["n_cells"] = 60;
        j["degree"] = 2;
        j["flux"] = {{"beta0", 4.0}, {"beta1", 1.0 / 12.0}};
        // f H'' = 1 for this model, so the diffusion is heat-like and the
        // k = 2 explicit step must stay below ~0.04 h^2
        j["time"] = {{"policy", super ? "explicit_dt" : "fixed_ck"},
                     {"c_of_k", 0.02},
                     {"dt", 2e-4},
                     {"t_end", super ? 4.0 : 30.0}};
        // the confining potential drains the far tails below the floor;
        // flatten-and-track keeps the long run alive (log-type H' still
        // needs u >= delta at every quadrature point)
        j["limiter"] = {{"enabled", true}, {"delta", 1e-12}, {"skip_zero_cells", false},
                        {"fallback", "track"}};
        j["initial"] = {{"name", "double_gaussian"}, {"params", {{"M", super ? 10.0 : 1.0}}}};
        j["output"] = {{"series_every", 200}};
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return j;
}

template <typename T>
T get_or(const json& j, const std::string& key, const T& fallback, const std::string& path) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config error at " + path + "." + key + ": " + e.what());
    }
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"example1", "example2", "example2_nontrivial", "example3",
            "example4", "example5", "example5_decay", "example6_subcritical",
            "example6_supercritical"};
}

RunConfig parse_config(const json& raw) {
    json j = raw;
    if (raw.contains("preset") && !raw.at("preset").get<std::string>().empty()) {
        j = preset_json(raw.at("preset").get<std::string>());
        deep_merge(j, raw);
    }

    RunConfig c;
    c.preset = get_or<std::string>(j, "preset", "", "");
    if (j.contains("model")) {
        const auto& m = j.at("model");
        c.model_name = get_or<std::string>(m, "name", c.model_name, "model");
        c.model_params = get_or<std::map<std::string, double>>(m, "params", {}, "model");
    }
    if (j.contains("domain")) {
        c.domain_a = get_or<double>(j.at("domain"), "a", c.domain_a, "domain");
        c.domain_b = get_or<double>(j.at("domain"), "b", c.domain_b, "domain");
    }
    if (!(c.domain_b > c.domain_a)) throw ConfigError("config error at domain: requires b > a");
    c.n_cells = get_or<int>(j, "n_cells", c.n_cells, "");
    if (c.n_cells < 2) throw ConfigError("config error at n_cells: requires >= 2");
    c.cell_ladder = get_or<std::vector<double>>(j, "ladder", {}, "");
    c.degree = get_or<int>(j, "degree", c.degree, "");
    if (c.degree < 0 || c.degree > 8) throw ConfigError("config error at degree: requires 0..8");
    if (j.contains("flux")) {
        c.flux.beta0 = get_or<double>(j.at("flux"), "beta0", c.flux.beta0, "flux");
        c.flux.beta1 = get_or<double>(j.at("flux"), "beta1", c.flux.beta1, "flux");
    } else {
        c.flux = flux_for_degree(c.degree);
    }
    if (!(c.flux.beta0 > 0.0)) throw ConfigError("config error at flux.beta0: requires > 0");
    if (j.contains("time")) {
        const auto& t = j.at("time");
        c.time_policy = get_or<std::string>(t, "policy", c.time_policy, "time");
        c.c_of_k = get_or<double>(t, "c_of_k", c_of_k_default(c.degree), "time");
        c.dt = get_or<double>(t, "dt", 0.0, "time");
        c.t_end = get_or<double>(t, "t_end", c.t_end, "time");
    }
    if (c.time_policy != "fixed_ck" && c.time_policy != "explicit_dt" &&
        c.time_policy != "positivity_cfl")
        throw ConfigError("config error at time.policy: unknown policy '" + c.time_policy + "'");
    if (c.time_policy == "explicit_dt" && !(c.dt > 0.0))
        throw ConfigError("config error at time.dt: explicit_dt requires dt > 0");
    if (c.t_end < 0.0) throw ConfigError("config error at time.t_end: requires >= 0");
    if (j.contains("limiter")) {
        const auto& l = j.at("limiter");
        c.limiter.enabled = get_or<bool>(l, "enabled", true, "limiter");
        c.limiter.delta = get_or<double>(l, "delta", 0.0, "limiter");
        c.limiter.skip_zero_cells = get_or<bool>(l, "skip_zero_cells", false, "limiter");
        const auto fb = get_or<std::string>(l, "fallback", "error", "limiter");
        if (fb == "error")
            c.limiter.fallback = LimiterConfig::Fallback::Error;
        else if (fb == "track")
            c.limiter.fallback = LimiterConfig::Fallback::FlattenAndTrack;
        else
            throw ConfigError("config error at limiter.fallback: expected 'error' or 'track'");
        if (c.limiter.delta < 0.0)
            throw ConfigError("config error at limiter.delta: requires >= 0");
    }
    if (j.contains("initial")) {
        const auto& i = j.at("initial");
        c.initial = get_or<std::string>(i, "name", "", "initial");
        c.initial_params = get_or<std::map<std::string, double>>(i, "params", {}, "initial");
    }
    if (c.initial.empty()) throw ConfigError("config error at initial.name: required");
    if (j.contains("output")) {
        c.series_every = get_or<long>(j.at("output"), "series_every", c.series_every, "output");
        c.snapshot_times =
            get_or<std::vector<double>>(j.at("output"), "snapshot_times", {}, "output");
    }
    if (j.contains("reference")) {
        c.reference_refine = get_or<int>(j.at("reference"), "refine", 0, "reference");
        c.reference_degree = get_or<int>(j.at("reference"), "degree", 0, "reference");
    }
    c.beta1_list = get_or<std::vector<double>>(j, "beta1_list", {}, "");
    c.barenblatt_absolute_time = get_or<bool>(j, "barenblatt_absolute_time", false, "");
    c.seed = get_or<unsigned long>(j, "seed", 0, "");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

json config_to_json(const RunConfig& c) {
    json j;
    j["preset"] = c.preset;
    j["model"] = {{"name", c.model_name}, {"params", c.model_params}};
    j["domain"] = {{"a", c.domain_a}, {"b", c.domain_b}};
    j["n_cells"] = c.n_cells;
    if (!c.cell_ladder.empty()) j["ladder"] = c.cell_ladder;
    j["degree"] = c.degree;
    j["flux"] = {{"beta0", c.flux.beta0}, {"beta1", c.flux.beta1}};
    j["time"] = {{"policy", c.time_policy}, {"c_of_k", c.c_of_k}, {"dt", c.dt},
                 {"t_end", c.t_end}};
    j["limiter"] = {
        {"enabled", c.limiter.enabled},
        {"delta", c.limiter.delta},
        {"skip_zero_cells", c.limiter.skip_zero_cells},
        {"fallback", c.limiter.fallback == LimiterConfig::Fallback::Error ? "error" : "track"}};
    j["initial"] = {{"name", c.initial}, {"params", c.initial_params}};
    j["output"] = {{"series_every", c.series_every}, {"snapshot_times", c.snapshot_times}};
    j["reference"] = {{"refine", c.reference_refine}, {"degree", c.reference_degree}};
    if (!c.beta1_list.empty()) j["beta1_list"] = c.beta1_list;
    j["barenblatt_absolute_time"] = c.barenblatt_absolute_time;
    j["seed"] = c.seed;
    return j;
}

void apply_override(json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + assignment + "' is not of the form key=value");
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (key.empty()) throw ConfigError("override '" + assignment + "': empty path segment");
        if (dot == std::string::npos) {
            json parsed = json::parse(value, nullptr, false);
            (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
            break;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

ModelSpec build_model(const RunConfig& config) {
    ModelSpec model = make_model(config.model_name, config.model_params);
    model.bc = BoundaryCondition::zero_flux();  // all shipped presets are zero-flux
    return model;
}

std::function<double(double)> build_initial(const RunConfig& config) {
    const auto& p = config.initial_params;
    auto param = [&p](const std::string& key, double fallback) {
        auto it = p.find(key);
        return it == p.end() ? fallback : it->second;
    };
    const std::string& name = config.initial;
    if (name == "barenblatt") {
        const double m = param("m", 2.0), t0 = param("t0", 0.1);
        return [m, t0](double x) { return barenblatt(m, x, t0); };
    }
    if (name == "bump") {
        const double eps = param("eps", 1e-5);
        return [eps](double x) { return eps * (1.0 + 30.0 * std::exp(-25.0 * x * x)); };
    }
    if (name == "sine") {
        const double off = param("offset", 0.5), amp = param("amplitude", 0.5);
        return [off, amp](double x) { return off + amp * std::sin(M_PI * x); };
    }
    if (name == "gaussian") {
        const double mass = param("mass", 0.1), var = param("var", 0.4);
        return [mass, var](double x) {
            return mass / std::sqrt(var * M_PI) * std::exp(-x * x / var);
        };
    }
    if (name == "double_gaussian") {
        const double m_total = param("M", 1.0);
        return [m_total](double x) {
            const double a = std::exp(-0.5 * (x - 2.0) * (x - 2.0));
            const double b = std::exp(-0.5 * (x + 2.0) * (x + 2.0));
            return m_total / (2.0 * std::sqrt(2.0 * M_PI)) * (a + b);
        };
    }
    if (name == "constant") {
        const double v = param("value", 1.0);
        return [v](double) { return v; };
    }
    if (name == "steady_double_well") {
        // u0 with Phi + H'(u0) = C wherever positive (quadratic H, nu = 1)
        const double c_level = param("C", 3.0);
        return [c_level](double x) {
            const double x2 = x * x;
            return std::max(0.0, c_level - (0.25 * x2 * x2 - 0.5 * x2));
        };
    }
    throw ConfigError("config error at initial.name: unknown preset '" + name + "'");
}

TimeController build_controller(const RunConfig& config, double h) {
    (void)h;
    TimeController tc;
    tc.t_end = config.t_end;
    if (config.time_policy == "fixed_ck") {
        tc.policy = TimeController::Policy::FixedCk;
        tc.c_of_k = config.c_of_k;
    } else if (config.time_policy == "explicit_dt") {
        tc.policy = TimeController::Policy::ExplicitDt;
        tc.dt = config.dt;
    } else {
        tc.policy = TimeController::Policy::PositivityCFL;
    }
    return tc;
}

namespace {

namespace fs = std::filesystem;

struct RunPieces {
    Mesh mesh;
    ModelSpec model;
    Solver solver;
    TimeController controller;
};

RunPieces assemble(const RunConfig& config, int n_cells_override = 0) {
    const int n = n_cells_override > 0 ? n_cells_override : config.n_cells;
    Mesh mesh = build_mesh(config.domain_a, config.domain_b, n);
    ModelSpec model = build_model(config);
    Solver solver(Basis{config.degree}, model, config.flux, config.limiter);
    TimeController controller = build_controller(config, mesh.h);
    return {std::move(mesh), std::move(model), std::move(solver), controller};
}

std::string write_series_csv(const RunReport& report, const fs::path& path) {
    std::ofstream out(path);
    out << "t,entropy,mass,min_cell_avg,min_cell_value\n";
    for (std::size_t i = 0; i < report.times.size(); ++i)
        out << fmt7(report.times[i]) << ',' << fmt7(report.entropy_series[i]) << ','
            << fmt7(report.mass_series[i]) << ',' << fmt7(report.min_avg_series[i]) << ','
            << fmt7(report.min_value_series[i]) << '\n';
    return path.string();
}

std::string write_snapshot_csv(const DGField& u, const fs::path& path,
                               const std::function<double(double)>* exact = nullptr) {
    std::ofstream out(path);
    out << (exact ? "x,u_h,u_exact\n" : "x,u_h\n");
    for (int j = 0; j < u.n_cells(); ++j) {
        for (double xi : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            const double x = u.mesh.map_to_physical(j, xi);
            out << fmt7(x) << ',' << fmt7(u.eval(j, xi));
            if (exact) out << ',' << fmt7((*exact)(x));
            out << '\n';
        }
    }
    return path.string();
}

std::string write_summary_json(const RunConfig& config, const RunReport& report,
                               const fs::path& path) {
    json j;
    j["config"] = config_to_json(config);
    j["final_time"] = report.final_time;
    j["steps"] = report.step_count;
    j["final_entropy"] = report.entropy_series.empty() ? 0.0 : report.entropy_series.back();
    j["initial_mass"] = report.initial_mass;
    j["max_mass_drift"] = report.max_mass_drift;
    j["min_cell_average"] = report.min_cell_average;
    j["min_cell_value"] = report.min_cell_value;
    j["max_cell_average"] = report.max_cell_average;
    j["entropy_violation_count"] = report.entropy_violation_count;
    j["max_entropy_increase"] = report.max_entropy_increase;
    j["first_negative_avg_time"] = report.first_negative_avg_time;
    j["event_count"] = report.events.size();
    json ev = json::array();
    for (std::size_t i = 0; i < report.events.size() && i < 100; ++i)
        ev.push_back({{"t", report.events[i].time},
                      {"kind", report.events[i].kind},
                      {"cell", report.events[i].cell}});
    j["events"] = ev;
    std::ofstream out(path);
    out << j.dump(2) << '\n';
    return path.string();
}

void run_parallel(std::size_t n_items, int jobs, const std::function<void(std::size_t)>& work) {
    if (jobs <= 1 || n_items <= 1) {
        for (std::size_t i = 0; i < n_items; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t n_threads = std::min(static_cast<std::size_t>(jobs), n_items);
    pool.reserve(n_threads);
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_items || failed.load()) break;
                try {
                    work(i);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lk(error_mutex);
                    failed.store(true);
                    if (error_message.empty()) error_message = e.what();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error(error_message);
}

}  // namespace

CommandResult cmd_run(const RunConfig& config, const std::string& out_dir) {
    auto pieces = assemble(config);
    const auto u0_fn = build_initial(config);
    const DGField u0 =
        project_l2(u0_fn, pieces.mesh, Basis{config.degree}, pieces.solver.quad());

    RecordOptions record;
    record.series_every = config.series_every;

    CommandResult result;
    const bool persist = !out_dir.empty();
    fs::path dir(out_dir);
    if (persist) {
        fs::create_directories(dir);
        record.snapshot_times = config.snapshot_times;
        record.on_snapshot = [&](const DGField& u, double t) {
            result.written_files.push_back(
                write_snapshot_csv(u, dir / ("snapshot_t" + fmt7(t) + ".csv")));
        };
    }

    result.report = pieces.solver.run(u0, pieces.controller, record);

    if (persist) {
        result.written_files.push_back(write_series_csv(result.report, dir / "series.csv"));
        result.written_files.push_back(
            write_snapshot_csv(result.report.final_u, dir / "snapshot_final.csv"));
        result.written_files.push_back(
            write_summary_json(config, result.report, dir / "summary.json"));
    }
    return result;
}

ConvergenceResult cmd_converge(const RunConfig& config, const std::string& out_dir, int jobs) {
    if (config.cell_ladder.size() < 3)
        throw ConfigError("config error at ladder: converge needs >= 3 mesh sizes");

    const double span = config.domain_b - config.domain_a;
    auto cells_for = [&](double h) {
        const int n = static_cast<int>(std::lround(span / h));
        if (n < 2 || std::abs(span / n - h) > 1e-9 * h)
            throw ConfigError("config error at ladder: h = " + fmt7(h) +
                              " does not divide the domain");
        return n;
    };

    // reference: same scheme on a refined mesh (the error separation is
    // 2^{k+1} per refinement level, enough for the observed orders)
    const int refine =
        config.reference_refine > 0 ? config.reference_refine : (config.degree == 1 ? 4 : 2);
    const double h_ref = config.cell_ladder.back() / refine;
    RunConfig ref_config = config;
    if (config.reference_degree > 0) {
        ref_config.degree = config.reference_degree;
        ref_config.flux = flux_for_degree(config.reference_degree);
        ref_config.c_of_k = c_of_k_default(config.reference_degree);
    }

    DGField reference;
    std::vector<double> errors(config.cell_ladder.size());
    {
        auto pieces = assemble(ref_config, cells_for(h_ref));
        const auto u0_fn = build_initial(ref_config);
        const DGField u0 = project_l2(u0_fn, pieces.mesh, Basis{ref_config.degree},
                                      pieces.solver.quad());
        RecordOptions record;
        record.series_every = 0;
        record.per_step_diagnostics = false;
        reference = pieces.solver.run(u0, pieces.controller, record).final_u;
    }

    run_parallel(config.cell_ladder.size(), jobs, [&](std::size_t i) {
        auto pieces = assemble(config, cells_for(config.cell_ladder[i]));
        const auto u0_fn = build_initial(config);
        const DGField u0 =
            project_l2(u0_fn, pieces.mesh, Basis{config.degree}, pieces.solver.quad());
        RecordOptions record;
        record.series_every = 0;
        record.per_step_diagnostics = false;
        const RunReport report = pieces.solver.run(u0, pieces.controller, record);
        errors[i] = l1_error(report.final_u, reference);
    });

    const auto orders = convergence_orders(errors, config.cell_ladder);
    ConvergenceResult result;
    for (std::size_t i = 0; i < errors.size(); ++i)
        result.rows.push_back({config.cell_ladder[i], errors[i],
                               i == 0 ? std::nan("") : orders[i - 1]});

    if (!out_dir.empty()) {
        fs::path dir(out_dir);
        fs::create_directories(dir);
        std::ofstream out(dir / "convergence.csv");
        out << "h,l1_error,order\n";
        for (const auto& row : result.rows) {
            out << fmt7(row.h) << ',' << fmt7(row.l1) << ',';
            if (std::isnan(row.order))
                out << "--";
            else
                out << fmt7(row.order);
            out << '\n';
        }
        result.written_files.push_back((dir / "convergence.csv").string());
    }
    return result;
}

SweepResult cmd_sweep_beta(const RunConfig& config, const std::string& out_dir, int jobs) {
    if (config.beta1_list.empty())
        throw ConfigError("config error at beta1_list: sweep needs at least one beta1");

    SweepResult result;
    result.rows.resize(config.beta1_list.size());

    run_parallel(config.beta1_list.size(), jobs, [&](std::size_t i) {
        RunConfig variant = config;
        variant.flux.beta1 = config.beta1_list[i];
        variant.limiter.fallback = LimiterConfig::Fallback::FlattenAndTrack;
        auto pieces = assemble(variant);
        const auto u0_fn = build_initial(variant);
        const DGField u0 =
            project_l2(u0_fn, pieces.mesh, Basis{variant.degree}, pieces.solver.quad());
        RecordOptions record;
        record.series_every = 0;
        record.stop_on_negative_avg = true;
        const RunReport report = pieces.solver.run(u0, pieces.controller, record);
        result.rows[i] = {variant.flux.beta0, variant.flux.beta1,
                          report.first_negative_avg_time};
    });

    if (!out_dir.empty()) {
        fs::path dir(out_dir);
        fs::create_directories(dir);
        std::ofstream out(dir / "sweep.csv");
        out << "beta0,beta1,negative_time\n";
        for (const auto& row : result.rows) {
            out << fmt7(row.beta0) << ',' << fmt7(row.beta1) << ',';
            if (row.negative_time < 0.0)
                out << ">" << fmt7(config.t_end);
            else
                out << fmt7(row.negative_time);
            out << '\n';
        }
        result.written_files.push_back((dir / "sweep.csv").string());
    }
    return result;
}

BarenblattResult cmd_barenblatt(const RunConfig& config, const std::string& out_dir) {
    RunConfig run_config = config;
    if (config.barenblatt_absolute_time) run_config.t_end = config.t_end - 0.1;
    if (!(run_config.t_end > 0.0))
        throw ConfigError("config error at time.t_end: too small for the absolute-time reading");

    auto t0_it = config.initial_params.find("t0");
    const double t0 = t0_it == config.initial_params.end() ? 0.1 : t0_it->second;
    auto m_it = config.initial_params.find("m");
    const double m = m_it == config.initial_params.end() ? 2.0 : m_it->second;

    BarenblattResult result;
    result.exact_time = run_config.t_end + t0;
    const std::function<double(double)> exact = [m, t_exact = result.exact_time](double x) {
        return barenblatt(m, x, t_exact);
    };

    result.report = cmd_run(run_config, "").report;
    result.l1_vs_exact = l1_error(result.report.final_u, exact);
    result.min_value_limited = result.report.min_cell_value;

    // comparison run without the limiter: undershoots at the front feed a
    // negative mobility and the run eventually diverges, so stop at the
    // first negative pointwise minimum instead of running to t_end
    RunConfig unlimited = run_config;
    unlimited.limiter.enabled = false;
    {
        auto pieces = assemble(unlimited);
        const auto u0_fn = build_initial(unlimited);
        const DGField u0 =
            project_l2(u0_fn, pieces.mesh, Basis{unlimited.degree}, pieces.solver.quad());
        RecordOptions record;
        record.series_every = 0;
        record.stop_on_negative_min = true;
        result.min_value_unlimited =
            pieces.solver.run(u0, pieces.controller, record).min_cell_value;
    }

    if (!out_dir.empty()) {
        fs::path dir(out_dir);
        fs::create_directories(dir);
        result.written_files.push_back(
            write_snapshot_csv(result.report.final_u, dir / "snapshot_final.csv", &exact));
        result.written_files.push_back(write_series_csv(result.report, dir / "series.csv"));
        json j;
        j["config"] = config_to_json(config);
        j["l1_vs_exact"] = result.l1_vs_exact;
        j["exact_time"] = result.exact_time;
        j["min_value_with_limiter"] = result.min_value_limited;
        j["min_value_without_limiter"] = result.min_value_unlimited;
        j["undershoot_without_limiter"] = result.min_value_unlimited < 0.0;
        std::ofstream out(dir / "summary.json");
        out << j.dump(2) << '\n';
        result.written_files.push_back((dir / "summary.json").string());
    }
    return result;
}

}  // namespace esdg
