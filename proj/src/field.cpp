#include "esdg/field.hpp"

namespace esdg {

double DGField::eval(int cell, double xi) const {
    const auto leg = legendre_eval(degree, xi);
    const double* c = cell_data(cell);
    double v = 0.0;
    for (int i = 0; i <= degree; ++i) v += c[i] * leg.values[static_cast<std::size_t>(i)];
    return v;
}

void DGField::eval_with_derivatives(int cell, double xi, double& value, double& dx,
                                    double& dxx) const {
    const auto leg = legendre_eval(degree, xi);
    const double* c = cell_data(cell);
    double v = 0.0, d1 = 0.0, d2 = 0.0;
    for (int i = 0; i <= degree; ++i) {
        const auto s = static_cast<std::size_t>(i);
        v += c[i] * leg.values[s];
        d1 += c[i] * leg.d1[s];
        d2 += c[i] * leg.d2[s];
    }
    const double jac = 2.0 / mesh.h;
    value = v;
    dx = d1 * jac;
    dxx = d2 * jac * jac;
}

}  // namespace esdg
