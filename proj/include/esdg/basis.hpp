#pragma once

#include <vector>

namespace esdg {

/// Legendre modal basis of degree k on the reference element [-1, 1],
/// normalized so that L_i(1) = 1.
struct Basis {
    int degree = 0;

    int n_modes() const { return degree + 1; }
};

/// Values of the Legendre polynomials and their first two xi-derivatives
/// at a single reference point, for modes 0..k.
struct LegendreValues {
    std::vector<double> values;
    std::vector<double> d1;
    std::vector<double> d2;
};

/// Evaluates L_i(xi), L_i'(xi), L_i''(xi) for i = 0..k by the three-term
/// recurrence. Derivatives are with respect to xi.
LegendreValues legendre_eval(int k, double xi);

/// Diagonal of the local mass matrix M = (h/2) int L L^T dxi: entries h/(2i+1).
std::vector<double> mass_matrix(const Basis& basis, double h);

}  // namespace esdg
