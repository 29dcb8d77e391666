#include "esdg/basis.hpp"

#include <stdexcept>

namespace esdg {

LegendreValues legendre_eval(int k, double xi) {
    if (k < 0) throw std::invalid_argument("legendre_eval: degree must be nonnegative");
    const auto n = static_cast<std::size_t>(k) + 1;
    LegendreValues out;
    out.values.assign(n, 0.0);
    out.d1.assign(n, 0.0);
    out.d2.assign(n, 0.0);

    out.values[0] = 1.0;
    if (k == 0) return out;
    out.values[1] = xi;
    out.d1[1] = 1.0;

    // (i+1) L_{i+1} = (2i+1) xi L_i - i L_{i-1}, differentiated once and twice.
    for (int i = 1; i < k; ++i) {
        const auto s = static_cast<std::size_t>(i);
        const double a = (2.0 * i + 1.0) / (i + 1.0);
        const double b = static_cast<double>(i) / (i + 1.0);
        out.values[s + 1] = a * xi * out.values[s] - b * out.values[s - 1];
        out.d1[s + 1] = a * (out.values[s] + xi * out.d1[s]) - b * out.d1[s - 1];
        out.d2[s + 1] = a * (2.0 * out.d1[s] + xi * out.d2[s]) - b * out.d2[s - 1];
    }
    return out;
}

std::vector<double> mass_matrix(const Basis& basis, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("mass_matrix: requires h > 0");
    std::vector<double> diag(static_cast<std::size_t>(basis.n_modes()));
    for (int i = 0; i <= basis.degree; ++i)
        diag[static_cast<std::size_t>(i)] = h / (2.0 * i + 1.0);
    return diag;
}

}  // namespace esdg
