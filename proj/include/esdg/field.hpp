#pragma once

#include <vector>

#include "esdg/basis.hpp"
#include "esdg/mesh.hpp"

namespace esdg {

/// Piecewise polynomial in modal Legendre coordinates: N cells x (k+1) modes,
/// stored row-major. The mode-0 coefficient of a cell is its cell average.
struct DGField {
    Mesh mesh;
    int degree = 0;
    std::vector<double> coeffs;

    DGField() = default;
    DGField(Mesh m, int k)
        : mesh(std::move(m)),
          degree(k),
          coeffs(static_cast<std::size_t>(mesh.n_cells) * static_cast<std::size_t>(k + 1), 0.0) {}

    int n_modes() const { return degree + 1; }
    int n_cells() const { return mesh.n_cells; }

    double& at(int cell, int mode) {
        return coeffs[static_cast<std::size_t>(cell) * static_cast<std::size_t>(n_modes()) +
                      static_cast<std::size_t>(mode)];
    }
    double at(int cell, int mode) const {
        return coeffs[static_cast<std::size_t>(cell) * static_cast<std::size_t>(n_modes()) +
                      static_cast<std::size_t>(mode)];
    }

    const double* cell_data(int cell) const {
        return coeffs.data() + static_cast<std::size_t>(cell) * static_cast<std::size_t>(n_modes());
    }
    double* cell_data(int cell) {
        return coeffs.data() + static_cast<std::size_t>(cell) * static_cast<std::size_t>(n_modes());
    }

    double cell_average(int cell) const { return at(cell, 0); }

    /// Value at reference point xi in cell j.
    double eval(int cell, double xi) const;

    /// Value and first two physical derivatives at reference point xi in cell j.
    /// Physical derivatives carry the (2/h)^p Jacobian factors.
    void eval_with_derivatives(int cell, double xi, double& value, double& dx, double& dxx) const;
};

}  // namespace esdg
