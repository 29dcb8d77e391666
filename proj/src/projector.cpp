#include "esdg/projector.hpp"

#include <cmath>

namespace esdg {

DGField project_l2(const std::function<double(double)>& g, const Mesh& mesh, const Basis& basis,
                   const Quadrature& quad) {
    DGField field(mesh, basis.degree);
    const int k = basis.degree;

    std::vector<LegendreValues> at_nodes;
    at_nodes.reserve(static_cast<std::size_t>(quad.n_points));
    for (int p = 0; p < quad.n_points; ++p)
        at_nodes.push_back(legendre_eval(k, quad.nodes[static_cast<std::size_t>(p)]));

    for (int j = 0; j < mesh.n_cells; ++j) {
        double* c = field.cell_data(j);
        for (int p = 0; p < quad.n_points; ++p) {
            const auto s = static_cast<std::size_t>(p);
            const double gv = g(mesh.map_to_physical(j, quad.nodes[s]));
            const double wg = quad.weights[s] * gv;
            for (int i = 0; i <= k; ++i)
                c[i] += wg * at_nodes[s].values[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i <= k; ++i) c[i] *= (2.0 * i + 1.0) / 2.0;
    }
    return field;
}

DGField compute_q(const DGField& u, const ModelSpec& model, const Quadrature& quad) {
    if (model.trivial_potential_quadratic_H) return u;

    const int k = u.degree;
    DGField q(u.mesh, k);

    std::vector<LegendreValues> at_nodes;
    at_nodes.reserve(static_cast<std::size_t>(quad.n_points));
    for (int p = 0; p < quad.n_points; ++p)
        at_nodes.push_back(legendre_eval(k, quad.nodes[static_cast<std::size_t>(p)]));

    for (int j = 0; j < u.n_cells(); ++j) {
        const double* uc = u.cell_data(j);
        double* qc = q.cell_data(j);
        for (int p = 0; p < quad.n_points; ++p) {
            const auto s = static_cast<std::size_t>(p);
            double uval = 0.0;
            for (int i = 0; i <= k; ++i)
                uval += uc[i] * at_nodes[s].values[static_cast<std::size_t>(i)];
            const double x = u.mesh.map_to_physical(j, quad.nodes[s]);
            const double v = model.phi(x) + model.h_prime(uval);
            if (!std::isfinite(v))
                throw EvaluationDomainError(
                    "compute_q: H' not evaluable at a quadrature value in cell " +
                        std::to_string(j),
                    j);
            const double wv = quad.weights[s] * v;
            for (int i = 0; i <= k; ++i)
                qc[i] += wv * at_nodes[s].values[static_cast<std::size_t>(i)];
        }
        for (int i = 0; i <= k; ++i) qc[i] *= (2.0 * i + 1.0) / 2.0;
    }
    return q;
}

}  // namespace esdg
