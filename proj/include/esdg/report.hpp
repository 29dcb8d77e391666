#pragma once

#include <string>
#include <vector>

#include "esdg/field.hpp"

namespace esdg {

struct RunEvent {
    double time = 0.0;
    std::string kind;  // "limiter_squeeze", "limiter_flatten", "conservation_break",
                       // "negative_average", "warning"
    int cell = -1;
    std::string detail;
};

/// Time series and final state of one solve.
struct RunReport {
    std::vector<double> times;
    std::vector<double> entropy_series;
    std::vector<double> mass_series;
    std::vector<double> min_avg_series;
    std::vector<double> min_value_series;
    DGField final_u;
    DGField final_q;
    double final_time = 0.0;
    long step_count = 0;
    std::vector<RunEvent> events;

    // Per-step bookkeeping (checked every step, not just at record cadence).
    long entropy_violation_count = 0;   // steps with E^{n+1} > E^n + tol
    double max_entropy_increase = 0.0;  // largest E^{n+1} - E^n observed
    double initial_mass = 0.0;
    double max_mass_drift = 0.0;  // max |mass - initial_mass|
    double min_cell_average = 0.0;
    double min_cell_value = 0.0;
    double max_cell_average = 0.0;  // max over time of max_j u_bar_j
    /// First time any cell average dropped below the limiter floor delta;
    /// negative when it never happened.
    double first_negative_avg_time = -1.0;
};

}  // namespace esdg
