#include "esdg/dg_operator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace esdg {

namespace {

double dot(const std::vector<double>& a, const double* b, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += a[static_cast<std::size_t>(i)] * b[i];
    return acc;
}

}  // namespace

EdgeVectors edge_vectors(const Basis& basis, const FluxParams& params) {
    const auto right = legendre_eval(basis.degree, 1.0);
    const auto left = legendre_eval(basis.degree, -1.0);
    EdgeVectors ev;
    const auto n = static_cast<std::size_t>(basis.n_modes());
    ev.d_vec.resize(n);
    ev.e_vec.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        ev.d_vec[i] = params.beta0 * right.values[i] - right.d1[i] + 4.0 * params.beta1 * right.d2[i];
        ev.e_vec[i] = params.beta0 * left.values[i] + left.d1[i] + 4.0 * params.beta1 * left.d2[i];
    }
    return ev;
}

double interface_flux(const Trace& q_left, const Trace& q_right, const FluxParams& params,
                      double h) {
    return params.beta0 * (q_right.value - q_left.value) / h +
           0.5 * (q_left.d1 + q_right.d1) + params.beta1 * h * (q_right.d2 - q_left.d2);
}

double gamma_bound(int k, double beta1) {
    if (k < 1) throw std::invalid_argument("gamma_bound: requires k >= 1");
    const double c = static_cast<double>(k) * k - 1.0;
    return 2.0 * k * k * (1.0 - beta1 * c + beta1 * beta1 * c * c / 3.0);
}

std::array<double, 3> alpha_coefficients(const FluxParams& params) {
    return {0.5 * (8.0 * params.beta1 - 1.0), 2.0 * (1.0 - 4.0 * params.beta1),
            params.beta0 + 0.5 * (8.0 * params.beta1 - 3.0)};
}

double cfl_positivity(const FluxParams& params, double f_max, bool allow_outside) {
    if (!allow_outside) {
        const bool ok =
            params.beta1 > 0.125 && params.beta1 < 0.25 && params.beta0 >= 1.0 && f_max > 0.0;
        if (!ok)
            throw std::invalid_argument(
                "cfl_positivity: requires beta1 in (1/8, 1/4), beta0 >= 1, f_max > 0");
    }
    const double a = params.beta0 + 8.0 * params.beta1 - 2.0;
    const double b = 1.0 - 4.0 * params.beta1;
    double bound = std::numeric_limits<double>::infinity();
    if (a > 0.0) bound = std::min(bound, 1.0 / a);
    if (b > 0.0) bound = std::min(bound, 1.0 / b);
    return bound / (12.0 * f_max);
}

double cfl_entropy(int k, const FluxParams& params, double gamma, double hpp_max, double f_max,
                   double h) {
    if (hpp_max <= 0.0) return std::numeric_limits<double>::infinity();
    const double kk = static_cast<double>(k);
    const double c = 4.0 * (kk + 1.0) * (kk + 1.0) *
                     (kk * (kk + 2.0) * std::max(1.0, kk * kk / params.beta0) +
                      8.0 * std::max(params.beta0, gamma_bound(k, 2.0 * params.beta1)));
    return h * h * gamma / (c * hpp_max * f_max);
}

CellAverageWeights cell_average_update_weights(double f_left, double f_right, double mu,
                                               const FluxParams& params) {
    const auto [a1, a2, a3] = alpha_coefficients(params);
    CellAverageWeights w;
    w.own = {1.0 / 6.0 - 2.0 * mu * (a3 * f_left + a1 * f_right),
             2.0 / 3.0 - 2.0 * mu * a2 * (f_left + f_right),
             1.0 / 6.0 - 2.0 * mu * (a1 * f_left + a3 * f_right)};
    w.right = {2.0 * mu * f_right * a3, 2.0 * mu * f_right * a2, 2.0 * mu * f_right * a1};
    w.left = {2.0 * mu * f_left * a1, 2.0 * mu * f_left * a2, 2.0 * mu * f_left * a3};
    return w;
}

double cell_average_update(const std::array<double, 3>& p_minus, const std::array<double, 3>& p,
                           const std::array<double, 3>& p_plus, double f_left, double f_right,
                           double mu, const FluxParams& params) {
    const auto w = cell_average_update_weights(f_left, f_right, mu, params);
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const auto s = static_cast<std::size_t>(i);
        acc += w.own[s] * p[s] + w.left[s] * p_minus[s] + w.right[s] * p_plus[s];
    }
    return acc;
}

DGOperator::DGOperator(Basis basis, Quadrature quad, FluxParams params)
    : basis_(basis), quad_(std::move(quad)), params_(params) {
    edge_ = edge_vectors(basis_, params_);
    left_ = legendre_eval(basis_.degree, -1.0);
    right_ = legendre_eval(basis_.degree, 1.0);
    at_nodes_.reserve(static_cast<std::size_t>(quad_.n_points));
    for (int p = 0; p < quad_.n_points; ++p)
        at_nodes_.push_back(legendre_eval(basis_.degree, quad_.nodes[static_cast<std::size_t>(p)]));
}

DGField DGOperator::rhs(const DGField& u, const DGField& q, const ModelSpec& model) const {
    const int k = basis_.degree;
    const int nm = basis_.n_modes();
    const int n = u.n_cells();
    const double h = u.mesh.h;
    DGField dudt(u.mesh, k);

    // cell traces of the mobility
    std::vector<double> mob_left(static_cast<std::size_t>(n));
    std::vector<double> mob_right(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double* uc = u.cell_data(j);
        mob_left[static_cast<std::size_t>(j)] = model.mobility(dot(left_.values, uc, nm));
        mob_right[static_cast<std::size_t>(j)] = model.mobility(dot(right_.values, uc, nm));
    }
    for (auto v : mob_left)
        if (!std::isfinite(v))
            throw EvaluationDomainError("semi_discrete_rhs: non-finite mobility trace", -1);

    // h * widehat{q_x} at interior interface j+1/2 (right of cell j)
    std::vector<double> hflux(static_cast<std::size_t>(n) - 1);
    std::vector<double> qjump(static_cast<std::size_t>(n) - 1);  // q^- - q^+
    for (int j = 0; j + 1 < n; ++j) {
        const auto s = static_cast<std::size_t>(j);
        const double* qj = q.cell_data(j);
        const double* qj1 = q.cell_data(j + 1);
        hflux[s] = -dot(edge_.d_vec, qj, nm) + dot(edge_.e_vec, qj1, nm);
        qjump[s] = dot(right_.values, qj, nm) - dot(left_.values, qj1, nm);
    }

    std::vector<double> r(static_cast<std::size_t>(nm));
    const bool dirichlet = model.bc.kind == BoundaryCondition::Kind::Dirichlet;
    if (dirichlet && (!model.bc.left_value || !model.bc.right_value))
        throw std::invalid_argument("semi_discrete_rhs: Dirichlet BC requires boundary values");

    for (int j = 0; j < n; ++j) {
        std::fill(r.begin(), r.end(), 0.0);
        const double* uc = u.cell_data(j);
        const double* qc = q.cell_data(j);

        // R1 volume term
        for (int p = 0; p < quad_.n_points; ++p) {
            const auto s = static_cast<std::size_t>(p);
            const double uval = dot(at_nodes_[s].values, uc, nm);
            const double qxi = dot(at_nodes_[s].d1, qc, nm);
            const double w = -quad_.weights[s] * model.mobility(uval) * qxi;
            for (int i = 0; i < nm; ++i)
                r[static_cast<std::size_t>(i)] += (2.0 / h) * w * at_nodes_[s].d1[static_cast<std::size_t>(i)];
        }

        // interface terms R2 + R3
        const bool has_right = j + 1 < n;
        const bool has_left = j > 0;

        if (has_right) {
            const auto s = static_cast<std::size_t>(j);
            const double fs = mob_right[s] + mob_left[s + 1];
            for (int i = 0; i < nm; ++i) {
                const auto si = static_cast<std::size_t>(i);
                r[si] += (1.0 / (2.0 * h)) * fs *
                         (hflux[s] * right_.values[si] + qjump[s] * right_.d1[si]);
            }
        } else if (dirichlet) {
            const double ub = *model.bc.right_value;
            const double g = model.phi(u.mesh.b) + model.h_prime(ub);
            const double fs = mob_right[static_cast<std::size_t>(j)] + model.mobility(ub);
            const double qm = dot(right_.values, qc, nm);
            const double hfx = -params_.beta0 * (qm - g) + 2.0 * dot(right_.d1, qc, nm);
            const double jump = qm - g;
            for (int i = 0; i < nm; ++i) {
                const auto si = static_cast<std::size_t>(i);
                r[si] += (1.0 / (2.0 * h)) * fs * (hfx * right_.values[si] + jump * right_.d1[si]);
            }
        }
        // zero-flux: boundary q-terms dropped entirely

        if (has_left) {
            const auto s = static_cast<std::size_t>(j) - 1;
            const double fs = mob_right[s] + mob_left[s + 1];
            for (int i = 0; i < nm; ++i) {
                const auto si = static_cast<std::size_t>(i);
                r[si] += (1.0 / (2.0 * h)) * fs *
                         (-hflux[s] * left_.values[si] + qjump[s] * left_.d1[si]);
            }
        } else if (dirichlet) {
            const double ua = *model.bc.left_value;
            const double g = model.phi(u.mesh.a) + model.h_prime(ua);
            const double fs = model.mobility(ua) + mob_left[static_cast<std::size_t>(j)];
            const double qp = dot(left_.values, qc, nm);
            const double hfx = params_.beta0 * (qp - g) + 2.0 * dot(left_.d1, qc, nm);
            const double jump = g - qp;
            for (int i = 0; i < nm; ++i) {
                const auto si = static_cast<std::size_t>(i);
                r[si] += (1.0 / (2.0 * h)) * fs * (-hfx * left_.values[si] + jump * left_.d1[si]);
            }
        }

        double* out = dudt.cell_data(j);
        for (int i = 0; i < nm; ++i)
            out[i] = r[static_cast<std::size_t>(i)] * (2.0 * i + 1.0) / h;  // M^{-1}
    }
    return dudt;
}

DGField semi_discrete_rhs(const DGField& u, const DGField& q, const ModelSpec& model,
                          const FluxParams& params) {
    DGOperator op(Basis{u.degree}, gauss_quadrature(u.degree + 2), params);
    return op.rhs(u, q, model);
}

}  // namespace esdg
