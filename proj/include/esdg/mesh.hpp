#pragma once

#include <vector>

namespace esdg {

/// Uniform partition of [a, b] into n_cells cells.
struct Mesh {
    double a = 0.0;
    double b = 1.0;
    int n_cells = 0;
    double h = 0.0;
    std::vector<double> centers;     // x_j, length n_cells
    std::vector<double> interfaces;  // x_{j+1/2}, length n_cells + 1

    /// Physical coordinate of reference point xi in [-1,1] within cell j.
    double map_to_physical(int j, double xi) const {
        return centers[static_cast<std::size_t>(j)] + 0.5 * h * xi;
    }
};

/// Builds a uniform mesh. Throws std::invalid_argument if b <= a or n_cells < 2.
Mesh build_mesh(double a, double b, int n_cells);

}  // namespace esdg
