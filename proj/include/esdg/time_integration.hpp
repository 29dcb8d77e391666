#pragma once

#include "esdg/dg_operator.hpp"
#include "esdg/limiter.hpp"
#include "esdg/models.hpp"
#include "esdg/projector.hpp"
#include "esdg/report.hpp"

namespace esdg {

/// Time-step policy. FixedCk uses dt = c_of_k * h^2; PositivityCFL derives the
/// mesh ratio from the Theorem-grade k=2 bound each step (or once at t = 0
/// when the mobility maximum is frozen); ExplicitDt takes dt verbatim.
struct TimeController {
    enum class Policy { FixedCk, PositivityCFL, ExplicitDt };
    Policy policy = Policy::FixedCk;
    double c_of_k = 0.1;
    double dt = 0.0;
    double t_end = 1.0;
    double cfl_gamma = 1.0;  // safety factor applied to PositivityCFL's mu0

    static TimeController fixed_ck(double c, double t_end) {
        return {Policy::FixedCk, c, 0.0, t_end, 1.0};
    }
    static TimeController explicit_dt(double dt, double t_end) {
        return {Policy::ExplicitDt, 0.0, dt, t_end, 1.0};
    }
};

struct SolveState {
    double t = 0.0;
    long step_index = 0;
    DGField u;
    DGField q;
};

struct RecordOptions {
    long series_every = 1;  // record series each this many steps (0: initial/final only)
    /// Relative tolerance used for the per-step entropy-increase bookkeeping.
    double entropy_tolerance = 1e-10;
    /// Times the run must land on exactly; on_snapshot fires at each.
    std::vector<double> snapshot_times;
    std::function<void(const DGField&, double)> on_snapshot;
    /// Stop once a cell average drops below the limiter floor (sweep runs).
    bool stop_on_negative_avg = false;
    /// Stop once the largest cell average reaches this value (0: disabled).
    double stop_max_avg = 0.0;
    /// Stop once any cell's pointwise minimum drops below zero (undershoot
    /// detection for limiter-off comparison runs, which may later blow up).
    bool stop_on_negative_min = false;
    /// When false, the per-step entropy/mass/extremum bookkeeping is skipped
    /// (used by convergence studies where only the final state matters).
    bool per_step_diagnostics = true;
};

/// Owns the per-solve machinery: operator tables, limiter, q-projection.
/// A solver holds no mutable state; independent solves can run concurrently.
class Solver {
public:
    Solver(Basis basis, ModelSpec model, FluxParams params, LimiterConfig limiter,
           int quad_points = 0 /* 0: k+2 */, bool freeze_cfl_mobility = false);

    /// One forward Euler step followed by the limiter and the q-recompute.
    SolveState step_euler(const SolveState& state, double dt,
                          std::vector<LimiterEvent>* events = nullptr) const;

    /// Heun (RK2): u1 = u + dt L(u); u_{n+1} = u/2 + u1/2 + (dt/2) L(u1),
    /// with limiter + q-recompute after each stage.
    SolveState step_heun(const SolveState& state, double dt,
                         std::vector<LimiterEvent>* events = nullptr) const;

    /// Advances the projected initial field to t_end with Heun stepping,
    /// recording diagnostics along the way. The last step is shortened to
    /// land exactly on t_end.
    RunReport run(const DGField& initial, const TimeController& controller,
                  const RecordOptions& record = {}) const;

    SolveState make_state(const DGField& initial) const;

    const ModelSpec& model() const { return model_; }
    const DGOperator& op() const { return op_; }
    const Quadrature& quad() const { return op_.quad(); }
    const LimiterConfig& limiter() const { return limiter_; }

private:
    double pick_dt(const TimeController& controller, const DGField& u) const;
    double max_trace_mobility(const DGField& u) const;

    ModelSpec model_;
    DGOperator op_;
    LimiterConfig limiter_;
    bool freeze_cfl_mobility_;
};

}  // namespace esdg
