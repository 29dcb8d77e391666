#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "esdg/field.hpp"

namespace esdg {

struct LimiterConfig {
    double delta = 0.0;
    bool enabled = true;
    bool skip_zero_cells = false;
    /// What to do when a cell average is at or below delta: hard error, or
    /// flatten the cell to max(average, delta) and keep going.
    enum class Fallback { Error, FlattenAndTrack };
    Fallback fallback = Fallback::Error;
};

class LimiterFailure : public std::runtime_error {
public:
    LimiterFailure(const std::string& what, int cell) : std::runtime_error(what), cell_(cell) {}
    int cell() const { return cell_; }

private:
    int cell_;
};

struct LimiterEvent {
    enum class Kind { Squeeze, Flatten, ConservationBreak };
    Kind kind;
    int cell;
};

/// Exact minimum of a single-cell modal polynomial over [-1, 1]: endpoints
/// plus real stationary points (k <= 3; k <= 1 uses endpoints only).
double cell_min(std::span<const double> modal_coeffs, int degree);

/// Average-preserving positivity squeeze (applied cell-wise):
///   w~ = w_bar + (w_bar - delta)/(w_bar - min w) (w - w_bar)   if min w < delta.
/// Cells already at or above delta pass through unchanged; identically-zero
/// cells pass through when skip_zero_cells. Cells with average <= delta
/// either raise LimiterFailure or are flattened, per config.fallback.
/// Events, when requested, record squeezes, flattens, and conservation breaks.
DGField reconstruct_positive(const DGField& field, const LimiterConfig& config,
                             std::vector<LimiterEvent>* events = nullptr);

/// In-place variant used inside the time loop.
void reconstruct_positive_inplace(DGField& field, const LimiterConfig& config,
                                  std::vector<LimiterEvent>* events = nullptr);

}  // namespace esdg
