// Command-line front end: run / converge / sweep-beta / barenblatt.
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "esdg/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    int jobs = 1;
    unsigned long seed = 0;
    bool seed_given = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "JSON config file (or use --override preset=...)");
    sub->add_option("--out", args.out_dir, "output directory for CSV/JSON artifacts");
    sub->add_option("--override", args.overrides,
                    "dotted-path config override, e.g. flux.beta1=0.25 (repeatable)");
    sub->add_option("--jobs", args.jobs, "worker threads for converge / sweep-beta")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", args.seed, "RNG seed recorded into the config")
        ->each([&args](const std::string&) { args.seed_given = true; });
}

esdg::RunConfig resolve_config(const CommonArgs& args) {
    nlohmann::json j = nlohmann::json::object();
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw esdg::ConfigError("cannot open config file '" + args.config_path + "'");
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw esdg::ConfigError("config parse error in '" + args.config_path + "': " +
                                    e.what());
        }
    }
    for (const auto& assignment : args.overrides) esdg::apply_override(j, assignment);
    if (args.seed_given) j["seed"] = args.seed;
    if (j.empty()) throw esdg::ConfigError("no config given; pass --config or --override");
    return esdg::parse_config(j);
}

std::string fmt7(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy-satisfying DG solver for 1D nonlinear Fokker-Planck equations"};
    app.require_subcommand(1);

    CommonArgs run_args, conv_args, sweep_args, bb_args;
    auto* cmd_run = app.add_subcommand("run", "single solve with diagnostics series");
    add_common(cmd_run, run_args);
    auto* cmd_conv = app.add_subcommand("converge", "mesh-refinement study with observed orders");
    add_common(cmd_conv, conv_args);
    auto* cmd_sweep = app.add_subcommand("sweep-beta", "positivity-loss times over beta1 values");
    add_common(cmd_sweep, sweep_args);
    auto* cmd_bb = app.add_subcommand("barenblatt", "self-similar solution comparison");
    add_common(cmd_bb, bb_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            const auto config = resolve_config(run_args);
            const auto result = esdg::cmd_run(config, run_args.out_dir);
            std::cout << "final_time " << fmt7(result.report.final_time) << "\n"
                      << "steps " << result.report.step_count << "\n"
                      << "mass " << fmt7(result.report.mass_series.back()) << "\n"
                      << "entropy " << fmt7(result.report.entropy_series.back()) << "\n"
                      << "min_cell_avg " << fmt7(result.report.min_cell_average) << "\n"
                      << "entropy_violations " << result.report.entropy_violation_count << "\n";
            for (const auto& f : result.written_files) std::cout << "wrote " << f << "\n";
        } else if (cmd_conv->parsed()) {
            const auto config = resolve_config(conv_args);
            const auto result = esdg::cmd_converge(config, conv_args.out_dir, conv_args.jobs);
            std::cout << "h,l1_error,order\n";
            for (const auto& row : result.rows)
                std::cout << fmt7(row.h) << ',' << fmt7(row.l1) << ','
                          << (std::isnan(row.order) ? std::string("--") : fmt7(row.order)) << "\n";
            for (const auto& f : result.written_files) std::cout << "wrote " << f << "\n";
        } else if (cmd_sweep->parsed()) {
            const auto config = resolve_config(sweep_args);
            const auto result = esdg::cmd_sweep_beta(config, sweep_args.out_dir, sweep_args.jobs);
            std::cout << "beta0,beta1,negative_time\n";
            for (const auto& row : result.rows)
                std::cout << fmt7(row.beta0) << ',' << fmt7(row.beta1) << ','
                          << (row.negative_time < 0.0 ? ">" + fmt7(config.t_end)
                                                      : fmt7(row.negative_time))
                          << "\n";
            for (const auto& f : result.written_files) std::cout << "wrote " << f << "\n";
        } else if (cmd_bb->parsed()) {
            const auto config = resolve_config(bb_args);
            const auto result = esdg::cmd_barenblatt(config, bb_args.out_dir);
            std::cout << "l1_vs_exact " << fmt7(result.l1_vs_exact) << "\n"
                      << "exact_time " << fmt7(result.exact_time) << "\n"
                      << "min_value_with_limiter " << fmt7(result.min_value_limited) << "\n"
                      << "min_value_without_limiter " << fmt7(result.min_value_unlimited) << "\n";
            for (const auto& f : result.written_files) std::cout << "wrote " << f << "\n";
        }
    } catch (const esdg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
