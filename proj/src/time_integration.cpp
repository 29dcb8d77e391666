#include "esdg/time_integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

#include "esdg/diagnostics.hpp"

namespace esdg {

namespace {

constexpr std::size_t kMaxStoredEvents = 2000;

bool all_finite(const DGField& f) {
    for (double c : f.coeffs)
        if (!std::isfinite(c)) return false;
    return true;
}

double min_cell_value(const DGField& f) {
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j < f.n_cells(); ++j) {
        std::span<const double> c(f.cell_data(j), static_cast<std::size_t>(f.n_modes()));
        worst = std::min(worst, cell_min(c, f.degree));
    }
    return worst;
}

double min_cell_average(const DGField& f) {
    double worst = std::numeric_limits<double>::infinity();
    for (int j = 0; j < f.n_cells(); ++j) worst = std::min(worst, f.cell_average(j));
    return worst;
}

double max_cell_average(const DGField& f) {
    double best = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < f.n_cells(); ++j) best = std::max(best, f.cell_average(j));
    return best;
}

}  // namespace

Solver::Solver(Basis basis, ModelSpec model, FluxParams params, LimiterConfig limiter,
               int quad_points, bool freeze_cfl_mobility)
    : model_(std::move(model)),
      op_(basis, gauss_quadrature(quad_points > 0 ? quad_points : basis.degree + 2), params),
      limiter_(limiter),
      freeze_cfl_mobility_(freeze_cfl_mobility) {}

SolveState Solver::make_state(const DGField& initial) const {
    SolveState state;
    state.u = initial;
    reconstruct_positive_inplace(state.u, limiter_);
    state.q = compute_q(state.u, model_, op_.quad());
    return state;
}

SolveState Solver::step_euler(const SolveState& state, double dt,
                              std::vector<LimiterEvent>* events) const {
    if (dt < 0.0) throw std::invalid_argument("step_euler: requires dt >= 0");
    SolveState next;
    next.t = state.t + dt;
    next.step_index = state.step_index + 1;
    next.u = state.u;
    const DGField rhs = op_.rhs(state.u, state.q, model_);
    for (std::size_t i = 0; i < next.u.coeffs.size(); ++i) next.u.coeffs[i] += dt * rhs.coeffs[i];
    reconstruct_positive_inplace(next.u, limiter_, events);
    next.q = compute_q(next.u, model_, op_.quad());
    return next;
}

SolveState Solver::step_heun(const SolveState& state, double dt,
                             std::vector<LimiterEvent>* events) const {
    SolveState stage = step_euler(state, dt, events);
    SolveState next;
    next.t = state.t + dt;
    next.step_index = state.step_index + 1;
    next.u = state.u;
    const DGField rhs1 = op_.rhs(stage.u, stage.q, model_);
    for (std::size_t i = 0; i < next.u.coeffs.size(); ++i)
        next.u.coeffs[i] = 0.5 * state.u.coeffs[i] + 0.5 * stage.u.coeffs[i] +
                           0.5 * dt * rhs1.coeffs[i];
    reconstruct_positive_inplace(next.u, limiter_, events);
    next.q = compute_q(next.u, model_, op_.quad());
    return next;
}

double Solver::max_trace_mobility(const DGField& u) const {
    double worst = 0.0;
    for (int j = 0; j < u.n_cells(); ++j) {
        worst = std::max(worst, std::abs(model_.mobility(u.eval(j, -1.0))));
        worst = std::max(worst, std::abs(model_.mobility(u.eval(j, 1.0))));
    }
    return worst;
}

double Solver::pick_dt(const TimeController& controller, const DGField& u) const {
    const double h = u.mesh.h;
    switch (controller.policy) {
        case TimeController::Policy::FixedCk:
            return controller.c_of_k * h * h;
        case TimeController::Policy::ExplicitDt:
            return controller.dt;
        case TimeController::Policy::PositivityCFL: {
            const double f_max = std::max(max_trace_mobility(u), 1e-300);
            return controller.cfl_gamma * cfl_positivity(op_.params(), f_max) * h * h;
        }
    }
    throw std::logic_error("pick_dt: unknown policy");
}

RunReport Solver::run(const DGField& initial, const TimeController& controller,
                      const RecordOptions& record) const {
    RunReport report;
    SolveState state = make_state(initial);

    double frozen_fmax = 0.0;
    if (freeze_cfl_mobility_ && controller.policy == TimeController::Policy::PositivityCFL)
        frozen_fmax = std::max(max_trace_mobility(state.u), 1e-300);

    double e_prev = entropy(state.u, model_, op_.quad());
    report.initial_mass = mass(state.u);
    report.min_cell_average = min_cell_average(state.u);
    report.min_cell_value = min_cell_value(state.u);
    report.max_cell_average = max_cell_average(state.u);

    auto record_point = [&](const SolveState& s, double e) {
        report.times.push_back(s.t);
        report.entropy_series.push_back(e);
        report.mass_series.push_back(mass(s.u));
        report.min_avg_series.push_back(min_cell_average(s.u));
        report.min_value_series.push_back(min_cell_value(s.u));
    };
    record_point(state, e_prev);

    std::vector<LimiterEvent> events;
    const double t_end = controller.t_end;
    const double t_eps = 1e-14 * std::max(1.0, std::abs(t_end));

    std::vector<double> snapshots = record.snapshot_times;
    std::sort(snapshots.begin(), snapshots.end());
    std::size_t next_snap = 0;
    while (next_snap < snapshots.size() && snapshots[next_snap] <= t_eps) {
        if (record.on_snapshot) record.on_snapshot(state.u, state.t);
        ++next_snap;
    }

    while (state.t < t_end - t_eps) {
        double dt;
        if (controller.policy == TimeController::Policy::PositivityCFL && freeze_cfl_mobility_) {
            dt = controller.cfl_gamma * cfl_positivity(op_.params(), frozen_fmax) *
                 state.u.mesh.h * state.u.mesh.h;
        } else {
            dt = pick_dt(controller, state.u);
        }
        if (!(dt > 0.0)) throw std::runtime_error("run: nonpositive time step");
        if (state.t + dt > t_end) dt = t_end - state.t;
        bool at_snapshot = false;
        if (next_snap < snapshots.size() && state.t + dt >= snapshots[next_snap] - t_eps) {
            dt = snapshots[next_snap] - state.t;
            at_snapshot = true;
        }

        events.clear();
        state = step_heun(state, dt, &events);
        if (state.t + t_eps >= t_end) state.t = t_end;
        if (at_snapshot) {
            state.t = snapshots[next_snap];
            if (record.on_snapshot) record.on_snapshot(state.u, state.t);
            ++next_snap;
        }

        if (!all_finite(state.u)) {
            record_point(state, std::numeric_limits<double>::quiet_NaN());
            report.final_u = state.u;
            report.final_time = state.t;
            throw std::runtime_error("run: non-finite coefficients at t = " +
                                     std::to_string(state.t));
        }

        ++report.step_count;
        if (!record.per_step_diagnostics) continue;

        const double e_now = entropy(state.u, model_, op_.quad());
        const double tol = record.entropy_tolerance * std::max(1.0, std::abs(e_prev));
        if (e_now > e_prev + tol) ++report.entropy_violation_count;
        report.max_entropy_increase = std::max(report.max_entropy_increase, e_now - e_prev);
        e_prev = e_now;

        const double m_now = mass(state.u);
        report.max_mass_drift =
            std::max(report.max_mass_drift, std::abs(m_now - report.initial_mass));

        const double min_avg = min_cell_average(state.u);
        const double min_val = min_cell_value(state.u);
        const double max_avg = max_cell_average(state.u);
        report.min_cell_average = std::min(report.min_cell_average, min_avg);
        report.min_cell_value = std::min(report.min_cell_value, min_val);
        report.max_cell_average = std::max(report.max_cell_average, max_avg);

        bool went_negative = min_avg < limiter_.delta;
        for (const auto& ev : events) {
            // a conservation-breaking flatten means a pre-limiter average
            // dropped below the floor even if the post-step field is clean
            if (ev.kind == LimiterEvent::Kind::ConservationBreak) went_negative = true;
            if (report.events.size() >= kMaxStoredEvents) continue;
            const char* kind = ev.kind == LimiterEvent::Kind::Squeeze ? "limiter_squeeze"
                               : ev.kind == LimiterEvent::Kind::Flatten ? "limiter_flatten"
                                                                        : "conservation_break";
            report.events.push_back({state.t, kind, ev.cell, ""});
        }
        if (went_negative && report.first_negative_avg_time < 0.0)
            report.first_negative_avg_time = state.t;

        if (record.series_every > 0 && report.step_count % record.series_every == 0 &&
            state.t < t_end)
            record_point(state, e_now);

        if (record.stop_on_negative_avg && report.first_negative_avg_time >= 0.0) break;
        if (record.stop_max_avg > 0.0 && max_avg >= record.stop_max_avg) break;
        if (record.stop_on_negative_min && report.min_cell_value < 0.0) break;
    }

    if (report.times.empty() || report.times.back() != state.t)
        record_point(state, entropy(state.u, model_, op_.quad()));
    report.final_u = state.u;
    report.final_q = state.q;
    report.final_time = state.t;
    return report;
}

}  // namespace esdg
