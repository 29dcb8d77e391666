#pragma once

#include <functional>

#include "esdg/field.hpp"
#include "esdg/models.hpp"
#include "esdg/quadrature.hpp"

namespace esdg {

/// Cell-wise L2 projection of g onto the broken polynomial space.
/// Reproduces piecewise polynomials of degree <= k exactly when the rule is
/// exact to degree 2k.
DGField project_l2(const std::function<double(double)>& g, const Mesh& mesh, const Basis& basis,
                   const Quadrature& quad);

/// Per-step auxiliary variable: q_h = cell-wise L2 projection of
/// Phi(x) + H'(u_h(x)). On the trivial-potential path returns u unchanged.
/// Throws EvaluationDomainError (with cell index) if H' produces a
/// non-finite value at a quadrature point.
DGField compute_q(const DGField& u, const ModelSpec& model, const Quadrature& quad);

}  // namespace esdg
