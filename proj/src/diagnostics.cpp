#include "esdg/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace esdg {

double entropy(const DGField& u, const ModelSpec& model, const Quadrature& quad) {
    double acc = 0.0;
    for (int j = 0; j < u.n_cells(); ++j) {
        for (int p = 0; p < quad.n_points; ++p) {
            const auto s = static_cast<std::size_t>(p);
            const double xi = quad.nodes[s];
            const double uval = u.eval(j, xi);
            acc += quad.weights[s] * model.entropy_density(u.mesh.map_to_physical(j, xi), uval);
        }
    }
    return acc * u.mesh.h / 2.0;
}

double mass(const DGField& u) {
    double acc = 0.0;
    for (int j = 0; j < u.n_cells(); ++j) acc += u.cell_average(j);
    return acc * u.mesh.h;
}

double entropy_norm_q(const DGField& q, const DGField& u, const ModelSpec& model,
                      const FluxParams& params, const Quadrature& quad) {
    const double h = q.mesh.h;
    double acc = 0.0;
    for (int j = 0; j < q.n_cells(); ++j) {
        for (int p = 0; p < quad.n_points; ++p) {
            const auto s = static_cast<std::size_t>(p);
            const double xi = quad.nodes[s];
            double qv, qx, qxx;
            q.eval_with_derivatives(j, xi, qv, qx, qxx);
            acc += (h / 2.0) * quad.weights[s] * model.mobility(u.eval(j, xi)) * qx * qx;
        }
    }
    for (int j = 0; j + 1 < q.n_cells(); ++j) {
        const double jump = q.eval(j + 1, -1.0) - q.eval(j, 1.0);
        const double favg =
            0.5 * (model.mobility(u.eval(j, 1.0)) + model.mobility(u.eval(j + 1, -1.0)));
        acc += favg * params.beta0 / h * jump * jump;
    }
    return acc;
}

double l1_error(const DGField& u, const std::function<double(double)>& reference) {
    const Quadrature quad = gauss_quadrature(4);
    double acc = 0.0;
    for (int j = 0; j < u.n_cells(); ++j) {
        for (int p = 0; p < quad.n_points; ++p) {
            const auto s = static_cast<std::size_t>(p);
            const double xi = quad.nodes[s];
            acc += quad.weights[s] *
                   std::abs(u.eval(j, xi) - reference(u.mesh.map_to_physical(j, xi)));
        }
    }
    return acc * u.mesh.h / 2.0;
}

double l1_error(const DGField& u, const DGField& reference) {
    // evaluate the (possibly finer) reference pointwise at the coarse nodes
    const Mesh& rm = reference.mesh;
    return l1_error(u, [&](double x) {
        int j = static_cast<int>(std::floor((x - rm.a) / rm.h));
        j = std::max(0, std::min(rm.n_cells - 1, j));
        const double xi = 2.0 * (x - rm.centers[static_cast<std::size_t>(j)]) / rm.h;
        return reference.eval(j, std::max(-1.0, std::min(1.0, xi)));
    });
}

double max_interface_jump(const DGField& q) {
    double worst = 0.0;
    for (int j = 0; j + 1 < q.n_cells(); ++j)
        worst = std::max(worst, std::abs(q.eval(j + 1, -1.0) - q.eval(j, 1.0)));
    return worst;
}

std::vector<double> convergence_orders(const std::vector<double>& errors,
                                       const std::vector<double>& hs) {
    if (errors.size() != hs.size() || errors.size() < 2)
        throw std::invalid_argument("convergence_orders: need matching vectors of length >= 2");
    for (double e : errors)
        if (!(e > 0.0)) throw std::invalid_argument("convergence_orders: errors must be positive");
    std::vector<double> orders;
    orders.reserve(errors.size() - 1);
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        orders.push_back(std::log(errors[i] / errors[i + 1]) / std::log(hs[i] / hs[i + 1]));
    return orders;
}

}  // namespace esdg
