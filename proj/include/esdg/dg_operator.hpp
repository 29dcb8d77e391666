#pragma once

#include <array>

#include "esdg/field.hpp"
#include "esdg/models.hpp"
#include "esdg/quadrature.hpp"

namespace esdg {

/// DDG flux coefficients in
///   widehat{q_x} = beta0 [q]/h + {q_x} + beta1 h [q_xx].
struct FluxParams {
    double beta0 = 1.0;
    double beta1 = 0.0;
};

/// Edge vectors of the modal assembly:
///   d_vec = beta0 L(1) - L_xi(1) + 4 beta1 L_xixi(1)
///   e_vec = beta0 L(-1) + L_xi(-1) + 4 beta1 L_xixi(-1)
struct EdgeVectors {
    std::vector<double> d_vec;
    std::vector<double> e_vec;
};

EdgeVectors edge_vectors(const Basis& basis, const FluxParams& params);

/// One-sided trace of q and its first two physical derivatives at an interface.
struct Trace {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// The DDG numerical flux at an interior interface.
double interface_flux(const Trace& q_left, const Trace& q_right, const FluxParams& params,
                      double h);

/// Simplified sufficient lower bound for beta0:
///   Gamma(beta1) <= 2k^2 (1 - beta1 (k^2-1) + beta1^2 (k^2-1)^2 / 3).
double gamma_bound(int k, double beta1);

/// Flux-expansion coefficients of the k=2 cell-average update:
///   alpha1 = (8 beta1 - 1)/2, alpha2 = 2(1 - 4 beta1),
///   alpha3 = beta0 + (8 beta1 - 3)/2.  Always alpha1+alpha2+alpha3 = beta0.
std::array<double, 3> alpha_coefficients(const FluxParams& params);

/// Mesh-ratio bound mu0 = dt/h^2 guaranteeing positive cell averages for the
/// k=2 trivial-potential scheme:
///   mu0 = 1/(12 f_max) min{1/(beta0 + 8 beta1 - 2), 1/(1 - 4 beta1)}.
/// Requires beta1 in (1/8, 1/4) and beta0 >= 1 unless allow_outside is set.
double cfl_positivity(const FluxParams& params, double f_max, bool allow_outside = false);

/// Entropy-dissipation time-step bound of the fully discrete scheme:
///   dt = h^2 gamma / (C(k,beta0,beta1) hpp_max f_max),
///   C = 4(k+1)^2 (k(k+2) max{1, k^2/beta0} + 8 max{beta0, Gamma(2 beta1)}).
/// Returns +infinity when hpp_max == 0.
double cfl_entropy(int k, const FluxParams& params, double gamma, double hpp_max, double f_max,
                   double h);

/// Convex-combination weights of the k=2 cell-average update (trivial
/// potential, q_h = u_h): weights on {p(-1), p(0), p(1)} of the own cell and
/// of the left/right neighbors. f_left/f_right are the averaged interface
/// mobilities, mu the mesh ratio dt/h^2. The nine weights sum to one.
struct CellAverageWeights {
    std::array<double, 3> own;
    std::array<double, 3> left;
    std::array<double, 3> right;
};

CellAverageWeights cell_average_update_weights(double f_left, double f_right, double mu,
                                               const FluxParams& params);

/// New cell average via the Theorem-style convex combination. p / p_minus /
/// p_plus hold the cell polynomial values at xi in {-1, 0, 1}.
double cell_average_update(const std::array<double, 3>& p_minus, const std::array<double, 3>& p,
                           const std::array<double, 3>& p_plus, double f_left, double f_right,
                           double mu, const FluxParams& params);

/// Precomputed tables for the modal assembly of one (mesh, basis, quadrature,
/// flux) combination. Stateless between calls; safe to share.
class DGOperator {
public:
    DGOperator(Basis basis, Quadrature quad, FluxParams params);

    /// Semi-discrete spatial operator: modal time derivative
    ///   M du_j/dt = (2/h) R1 + 1/(2h) (R2 + R3)
    /// with boundary treatment per the model's boundary condition.
    DGField rhs(const DGField& u, const DGField& q, const ModelSpec& model) const;

    const FluxParams& params() const { return params_; }
    const Basis& basis() const { return basis_; }
    const Quadrature& quad() const { return quad_; }

private:
    Basis basis_;
    Quadrature quad_;
    FluxParams params_;
    EdgeVectors edge_;
    LegendreValues left_;   // traces at xi = -1
    LegendreValues right_;  // traces at xi = +1
    std::vector<LegendreValues> at_nodes_;
};

/// Convenience wrapper building a throwaway operator (Q = k+2 points).
DGField semi_discrete_rhs(const DGField& u, const DGField& q, const ModelSpec& model,
                          const FluxParams& params);

}  // namespace esdg
