#pragma once

#include <vector>

namespace esdg {

/// Gauss-Legendre rule on (-1, 1); exact for polynomials of degree <= 2Q-1.
struct Quadrature {
    int n_points = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights for 1 <= Q <= 16. Nodes are computed by
/// Newton iteration on the Legendre roots seeded with Chebyshev estimates.
/// Throws std::invalid_argument outside the supported range.
Quadrature gauss_quadrature(int q_points);

}  // namespace esdg
