#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esdg/limiter.hpp"
#include "esdg/models.hpp"
#include "esdg/report.hpp"
#include "esdg/time_integration.hpp"

#include <nlohmann/json_fwd.hpp>

namespace esdg {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fully explicit description of one run. Presets expand to one of these;
/// the struct round-trips losslessly through JSON.
struct RunConfig {
    std::string preset;  // kept for provenance after expansion
    std::string model_name = "porous_medium";
    std::map<std::string, double> model_params;
    double domain_a = -1.0;
    double domain_b = 1.0;
    int n_cells = 20;
    std::vector<double> cell_ladder;  // mesh sizes h for converge runs
    int degree = 2;
    FluxParams flux{1.0, 0.0};
    std::string time_policy = "fixed_ck";  // fixed_ck | explicit_dt | positivity_cfl
    double c_of_k = 0.1;
    double dt = 0.0;
    double t_end = 1.0;
    LimiterConfig limiter;
    std::string initial;  // named initial-condition preset
    std::map<std::string, double> initial_params;
    long series_every = 10;
    std::vector<double> snapshot_times;
    // converge-only reference policy; 0 means automatic (same degree as the
    // study, refinement 4 for k = 1 and 2 otherwise)
    int reference_refine = 0;
    int reference_degree = 0;
    // sweep-beta-only
    std::vector<double> beta1_list;
    // barenblatt-only: when true, t_end means absolute Barenblatt time
    // (solver time t_end - 0.1); default compares against B(x, t_end + 0.1).
    bool barenblatt_absolute_time = false;
    unsigned long seed = 0;
};

/// Parses a config JSON object: expands "preset" into full defaults, then
/// merges the explicitly given keys on top. Throws ConfigError with the
/// offending field path.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& config);

/// Applies one dotted-path override ("flux.beta1=0.25") on the JSON level.
void apply_override(nlohmann::json& j, const std::string& assignment);

/// Known §-example presets by name (example1 .. example6_supercritical).
std::vector<std::string> preset_names();

ModelSpec build_model(const RunConfig& config);
std::function<double(double)> build_initial(const RunConfig& config);
TimeController build_controller(const RunConfig& config, double h);

/// Result bundle of one CLI command; out_dir may be empty (no files written).
struct CommandResult {
    RunReport report;
    std::vector<std::string> written_files;
};

struct ConvergenceRow {
    double h = 0.0;
    double l1 = 0.0;
    double order = 0.0;  // NaN in the first row
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    std::vector<std::string> written_files;
};

struct SweepRow {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double negative_time = -1.0;  // negative: stayed positive through t_end
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> written_files;
};

struct BarenblattResult {
    RunReport report;  // the with-limiter run
    double l1_vs_exact = 0.0;
    double exact_time = 0.0;  // Barenblatt time the final state is compared to
    double min_value_limited = 0.0;
    double min_value_unlimited = 0.0;  // same run without the limiter
    std::vector<std::string> written_files;
};

CommandResult cmd_run(const RunConfig& config, const std::string& out_dir);
ConvergenceResult cmd_converge(const RunConfig& config, const std::string& out_dir, int jobs = 1);
SweepResult cmd_sweep_beta(const RunConfig& config, const std::string& out_dir, int jobs = 1);
BarenblattResult cmd_barenblatt(const RunConfig& config, const std::string& out_dir);

}  // namespace esdg
