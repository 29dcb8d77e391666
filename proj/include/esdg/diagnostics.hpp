#pragma once

#include <functional>
#include <vector>

#include "esdg/dg_operator.hpp"
#include "esdg/field.hpp"
#include "esdg/models.hpp"
#include "esdg/quadrature.hpp"

namespace esdg {

/// Discrete entropy E = sum_j int (Phi u_h + H(u_h)) dx by cell-wise quadrature.
double entropy(const DGField& u, const ModelSpec& model, const Quadrature& quad);

/// Total mass h * sum_j u_bar_j.
double mass(const DGField& u);

/// Squared entropy norm
///   ||q||_E^2 = sum_j int f(u_h) |q_x|^2 dx
///             + sum over interior interfaces {f(u_h)} (beta0/h) [q]^2.
double entropy_norm_q(const DGField& q, const DGField& u, const ModelSpec& model,
                      const FluxParams& params, const Quadrature& quad);

/// l1 distance sum_j int |u_h - ref| dx via 4-point Gauss quadrature per cell.
double l1_error(const DGField& u, const std::function<double(double)>& reference);
double l1_error(const DGField& u, const DGField& reference);

/// Largest |[q]| over interior interfaces.
double max_interface_jump(const DGField& q);

/// Successive observed orders log(e_i/e_{i+1}) / log(h_i/h_{i+1}).
/// Throws std::invalid_argument on size mismatch, fewer than two entries, or
/// non-positive errors.
std::vector<double> convergence_orders(const std::vector<double>& errors,
                                       const std::vector<double>& hs);

}  // namespace esdg
