#include "esdg/mesh.hpp"

#include <stdexcept>

namespace esdg {

Mesh build_mesh(double a, double b, int n_cells) {
    if (!(b > a)) throw std::invalid_argument("build_mesh: requires b > a");
    if (n_cells < 2) throw std::invalid_argument("build_mesh: requires n_cells >= 2");

    Mesh mesh;
    mesh.a = a;
    mesh.b = b;
    mesh.n_cells = n_cells;
    mesh.h = (b - a) / n_cells;
    mesh.interfaces.resize(static_cast<std::size_t>(n_cells) + 1);
    mesh.centers.resize(static_cast<std::size_t>(n_cells));
    for (int j = 0; j <= n_cells; ++j)
        mesh.interfaces[static_cast<std::size_t>(j)] = a + mesh.h * j;
    mesh.interfaces.back() = b;  // close the right endpoint exactly
    for (int j = 0; j < n_cells; ++j) {
        const auto s = static_cast<std::size_t>(j);
        mesh.centers[s] = 0.5 * (mesh.interfaces[s] + mesh.interfaces[s + 1]);
    }
    return mesh;
}

}  // namespace esdg
