#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace esdg {

struct BoundaryCondition {
    enum class Kind { ZeroFlux, Dirichlet };
    Kind kind = Kind::ZeroFlux;
    std::optional<double> left_value;
    std::optional<double> right_value;

    static BoundaryCondition zero_flux() { return {}; }
    static BoundaryCondition dirichlet(double left, double right) {
        return {Kind::Dirichlet, left, right};
    }
};

/// H'(u) evaluation hit a point outside its domain (non-finite result).
class EvaluationDomainError : public std::runtime_error {
public:
    EvaluationDomainError(const std::string& what, int cell)
        : std::runtime_error(what), cell_(cell) {}
    int cell() const { return cell_; }

private:
    int cell_;
};

using ScalarFn = std::function<double(double)>;

/// One PDE instance u_t = (f(u) (Phi(x) + H'(u))_x)_x with its boundary data.
///
/// Models with `trivial_potential_quadratic_H` set are stored in the
/// reformulated variables: q_h = u_h and the solver uses f*H'' as mobility
/// (for those models H(u) = u^2/2 so mobility == f).
struct ModelSpec {
    std::string name;
    ScalarFn f;               // mobility
    ScalarFn h_entropy;       // H(u)
    ScalarFn h_prime;         // H'(u)
    ScalarFn h_double_prime;  // H''(u)
    ScalarFn phi;             // Phi(x)
    std::optional<int> phi_polynomial_degree;
    BoundaryCondition bc;
    bool trivial_potential_quadratic_H = false;

    /// Mobility entering the assembly: f on the general path, f*H'' on the
    /// trivial-potential path.
    double mobility(double u) const {
        return trivial_potential_quadratic_H ? f(u) * h_double_prime(u) : f(u);
    }

    /// Integrand of the entropy E = int (Phi u + H(u)) dx.
    double entropy_density(double x, double u) const { return phi(x) * u + h_entropy(u); }
};

/// Builds one of the named model families:
///   porous_medium(m)             u_t = (u^m)_xx, reformulated with q = u
///   porous_medium_convection(m)  u_t = (u^m)_xx + u_x
///   double_well(nu, m)           H' = nu u^{m-1}, Phi = x^4/4 - x^2/2
///   boson_fermion(k_sign)        f = u(1 + k u), Phi = x^2/2
///   general_fp(N)                f = u(1 + u^N), Phi = x^2/2
/// Throws std::invalid_argument for unknown names, missing parameters, or
/// m <= 1 in the porous-medium family. "custom" models are constructed
/// directly as ModelSpec values.
ModelSpec make_model(const std::string& name, const std::map<std::string, double>& params = {});

/// Barenblatt profile B_m(x, t) of the porous medium equation with the
/// similarity constant 0.2. Throws std::invalid_argument for t <= 0 or m <= 1.
double barenblatt(double m, double x, double t);

}  // namespace esdg
