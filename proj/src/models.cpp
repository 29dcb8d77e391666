#include "esdg/models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "esdg/quadrature.hpp"

namespace esdg {

namespace {

constexpr double kModelFloor = 1e-12;  // clamp for log-type H'

double require_param(const std::map<std::string, double>& params, const std::string& key,
                     const std::string& model) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("make_model(" + model + "): missing parameter '" + key + "'");
    return it->second;
}

/// Cumulative antiderivative H(u) = int_1^u H'(s) ds on a geometric grid,
/// finished off with a 16-point Gauss rule on the residual segment.
class AntiderivativeTable {
public:
    explicit AntiderivativeTable(ScalarFn hp) : hp_(std::move(hp)) {
        const double lo = 1e-13;  // grid spans 1e-13 .. 1e4
        const int per_decade = 8;
        const int n_decades = 17;
        grid_.reserve(static_cast<std::size_t>(per_decade) * n_decades + 1);
        for (int i = 0; i <= per_decade * n_decades; ++i)
            grid_.push_back(lo * std::pow(10.0, static_cast<double>(i) / per_decade));
        rule_ = gauss_quadrature(16);

        cum_.assign(grid_.size(), 0.0);
        // anchor at u = 1, integrate outward in both directions
        const std::size_t i1 = anchor_index();
        cum_[i1] = segment(grid_[i1], 1.0);  // int_1^{g_{i1}} = -int_{g}^{1}
        for (std::size_t i = i1 + 1; i < grid_.size(); ++i)
            cum_[i] = cum_[i - 1] + segment(grid_[i - 1], grid_[i]);
        for (std::size_t i = i1; i-- > 0;) cum_[i] = cum_[i + 1] - segment(grid_[i], grid_[i + 1]);
    }

    double eval(double u) const {
        const double uc = std::clamp(u, grid_.front(), grid_.back());
        auto it = std::upper_bound(grid_.begin(), grid_.end(), uc);
        std::size_t i = static_cast<std::size_t>(std::distance(grid_.begin(), it));
        if (i > 0) --i;
        if (i >= grid_.size() - 1) i = grid_.size() - 2;
        return cum_[i] + segment(grid_[i], uc);
    }

private:
    std::size_t anchor_index() const {
        // grid hits 1.0 exactly by construction (i = per_decade * 13)
        auto it = std::lower_bound(grid_.begin(), grid_.end(), 1.0 - 1e-9);
        return static_cast<std::size_t>(std::distance(grid_.begin(), it));
    }

    double segment(double lo, double hi) const {
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double acc = 0.0;
        for (int i = 0; i < rule_.n_points; ++i) {
            const auto s = static_cast<std::size_t>(i);
            acc += rule_.weights[s] * hp_(mid + half * rule_.nodes[s]);
        }
        return acc * half;
    }

    ScalarFn hp_;
    std::vector<double> grid_;
    std::vector<double> cum_;
    Quadrature rule_;
};

ModelSpec make_porous_medium(double m) {
    if (!(m > 1.0))
        throw std::invalid_argument("make_model(porous_medium): requires m > 1");
    ModelSpec spec;
    spec.name = "porous_medium";
    // Stored in the reformulated trivial-potential variables: q = u and the
    // original mobility/entropy pair collapses to f = m u^{m-1}, H = u^2/2.
    spec.f = [m](double u) { return m * std::pow(u, m - 1.0); };
    spec.h_entropy = [](double u) { return 0.5 * u * u; };
    spec.h_prime = [](double u) { return u; };
    spec.h_double_prime = [](double) { return 1.0; };
    spec.phi = [](double) { return 0.0; };
    spec.phi_polynomial_degree = 0;
    spec.trivial_potential_quadratic_H = true;
    return spec;
}

// Positivity-sweep variant with nontrivial quadratic potential:
// f = 2u, H = u^2/2, Phi = 30 eps x^2 / 2, solved on the general path.
ModelSpec make_porous_medium_quadratic_phi(double eps) {
    ModelSpec spec;
    spec.name = "porous_medium_quadratic_phi";
    spec.f = [](double u) { return 2.0 * u; };
    spec.h_entropy = [](double u) { return 0.5 * u * u; };
    spec.h_prime = [](double u) { return u; };
    spec.h_double_prime = [](double) { return 1.0; };
    spec.phi = [eps](double x) { return 15.0 * eps * x * x; };
    spec.phi_polynomial_degree = 2;
    return spec;
}

ModelSpec make_porous_medium_convection(double m) {
    if (!(m > 1.0))
        throw std::invalid_argument("make_model(porous_medium_convection): requires m > 1");
    ModelSpec spec;
    spec.name = "porous_medium_convection";
    spec.f = [](double u) { return u; };
    spec.h_entropy = [m](double u) { return std::pow(u, m) / (m - 1.0); };
    spec.h_prime = [m](double u) { return m * std::pow(u, m - 1.0) / (m - 1.0); };
    spec.h_double_prime = [m](double u) { return m * std::pow(u, m - 2.0); };
    spec.phi = [](double x) { return x; };
    spec.phi_polynomial_degree = 1;
    return spec;
}

ModelSpec make_double_well(double nu, double m) {
    ModelSpec spec;
    spec.name = "double_well";
    spec.f = [](double u) { return u; };
    spec.h_entropy = [nu, m](double u) { return nu * std::pow(u, m) / m; };
    spec.h_prime = [nu, m](double u) { return nu * std::pow(u, m - 1.0); };
    spec.h_double_prime = [nu, m](double u) { return nu * (m - 1.0) * std::pow(u, m - 2.0); };
    spec.phi = [](double x) {
        const double x2 = x * x;
        return 0.25 * x2 * x2 - 0.5 * x2;
    };
    spec.phi_polynomial_degree = 4;
    return spec;
}

ModelSpec make_log_mobility_model(const std::string& name, ScalarFn f, ScalarFn hp, ScalarFn hpp) {
    ModelSpec spec;
    spec.name = name;
    spec.f = std::move(f);
    spec.h_prime = std::move(hp);
    spec.h_double_prime = std::move(hpp);
    spec.phi = [](double x) { return 0.5 * x * x; };
    spec.phi_polynomial_degree = 2;
    auto table = std::make_shared<AntiderivativeTable>(spec.h_prime);
    spec.h_entropy = [table](double u) { return table->eval(u); };
    return spec;
}

ModelSpec make_general_fp(double n_exp) {
    if (!(n_exp > 0.0)) throw std::invalid_argument("make_model(general_fp): requires N > 0");
    return make_log_mobility_model(
        "general_fp",
        [n_exp](double u) { return u * (1.0 + std::pow(u, n_exp)); },
        [n_exp](double u) {
            const double uc = std::max(u, kModelFloor);
            return std::log(uc) - std::log1p(std::pow(uc, n_exp)) / n_exp;
        },
        [n_exp](double u) {
            const double uc = std::max(u, kModelFloor);
            return 1.0 / (uc * (1.0 + std::pow(uc, n_exp)));
        });
}

ModelSpec make_boson_fermion(double k_sign) {
    if (k_sign != 1.0 && k_sign != -1.0)
        throw std::invalid_argument("make_model(boson_fermion): k_sign must be +1 or -1");
    return make_log_mobility_model(
        k_sign > 0 ? "boson" : "fermion",
        [k_sign](double u) { return u * (1.0 + k_sign * u); },
        [k_sign](double u) {
            const double uc = std::max(u, kModelFloor);
            return std::log(uc) - std::log1p(k_sign * uc);
        },
        [k_sign](double u) {
            const double uc = std::max(u, kModelFloor);
            return 1.0 / (uc * (1.0 + k_sign * uc));
        });
}

}  // namespace

ModelSpec make_model(const std::string& name, const std::map<std::string, double>& params) {
    if (name == "porous_medium") return make_porous_medium(require_param(params, "m", name));
    if (name == "porous_medium_quadratic_phi")
        return make_porous_medium_quadratic_phi(require_param(params, "eps", name));
    if (name == "porous_medium_convection")
        return make_porous_medium_convection(require_param(params, "m", name));
    if (name == "double_well")
        return make_double_well(require_param(params, "nu", name), require_param(params, "m", name));
    if (name == "boson_fermion") return make_boson_fermion(require_param(params, "k_sign", name));
    if (name == "general_fp") return make_general_fp(require_param(params, "N", name));
    if (name == "custom")
        throw std::invalid_argument("make_model: custom models are built as ModelSpec values");
    throw std::invalid_argument("make_model: unknown model '" + name + "'");
}

double barenblatt(double m, double x, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("barenblatt: requires t > 0");
    if (!(m > 1.0)) throw std::invalid_argument("barenblatt: requires m > 1");
    const double alpha = 1.0 / (m + 1.0);
    const double inner =
        0.2 - alpha * (m - 1.0) / (2.0 * m) * x * x / std::pow(t, 2.0 * alpha);
    if (inner <= 0.0) return 0.0;
    return std::pow(t, -alpha) * std::pow(inner, 1.0 / (m - 1.0));
}

}  // namespace esdg
