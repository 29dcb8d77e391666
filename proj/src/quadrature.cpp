#include "esdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "esdg/basis.hpp"

namespace esdg {

Quadrature gauss_quadrature(int q_points) {
    if (q_points < 1 || q_points > 16)
        throw std::invalid_argument("gauss_quadrature: supported range is 1 <= Q <= 16");

    Quadrature rule;
    rule.n_points = q_points;
    rule.nodes.resize(static_cast<std::size_t>(q_points));
    rule.weights.resize(static_cast<std::size_t>(q_points));

    // Compute the negative half and mirror, so the rule is exactly symmetric
    // in floating point (odd moments cancel to zero instead of ~1e-16).
    for (int i = 0; i < q_points / 2; ++i) {
        // Chebyshev estimate for the i-th root of L_Q, then Newton.
        double x = -std::cos(std::numbers::pi * (i + 0.75) / (q_points + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto leg = legendre_eval(q_points, x);
            const double p = leg.values[static_cast<std::size_t>(q_points)];
            const double dp = leg.d1[static_cast<std::size_t>(q_points)];
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const auto leg = legendre_eval(q_points, x);
        const double dp = leg.d1[static_cast<std::size_t>(q_points)];
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(q_points - 1 - i)] = -x;
        rule.weights[static_cast<std::size_t>(q_points - 1 - i)] = w;
    }
    if (q_points % 2 == 1) {
        const int mid = q_points / 2;
        const auto leg = legendre_eval(q_points, 0.0);
        const double dp = leg.d1[static_cast<std::size_t>(q_points)];
        rule.nodes[static_cast<std::size_t>(mid)] = 0.0;
        rule.weights[static_cast<std::size_t>(mid)] = 2.0 / (dp * dp);
    }
    return rule;
}

}  // namespace esdg
