#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "esdg/diagnostics.hpp"
#include "esdg/projector.hpp"

using namespace esdg;

namespace {

ModelSpec quadratic_entropy_flat_phi() {
    ModelSpec m;
    m.name = "custom";
    m.f = [](double) { return 1.0; };
    m.h_entropy = [](double u) { return 0.5 * u * u; };
    m.h_prime = [](double u) { return u; };
    m.h_double_prime = [](double) { return 1.0; };
    m.phi = [](double) { return 0.0; };
    return m;
}

}  // namespace

TEST_CASE("entropy of a constant with quadratic H and flat potential") {
    // E = int_a^b c^2/2 dx = (b - a) c^2 / 2
    const Mesh mesh = build_mesh(-1.0, 2.0, 6);
    const ModelSpec model = quadratic_entropy_flat_phi();
    DGField u(mesh, 2);
    for (int j = 0; j < mesh.n_cells; ++j) u.at(j, 0) = 0.7;
    CHECK(entropy(u, model, gauss_quadrature(4)) ==
          doctest::Approx(3.0 * 0.49 / 2.0).epsilon(1e-13));
}

TEST_CASE("entropy includes the potential term") {
    // Phi = x, u = 1 on [0, 1]: E = int (x + 1/2) = 1
    const Mesh mesh = build_mesh(0.0, 1.0, 4);
    ModelSpec model = quadratic_entropy_flat_phi();
    model.phi = [](double x) { return x; };
    DGField u(mesh, 1);
    for (int j = 0; j < mesh.n_cells; ++j) u.at(j, 0) = 1.0;
    CHECK(entropy(u, model, gauss_quadrature(4)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("mass sums cell averages") {
    const Mesh mesh = build_mesh(-2.0, 2.0, 8);
    DGField u(mesh, 2);
    for (int j = 0; j < mesh.n_cells; ++j) {
        u.at(j, 0) = 1.0 + j;
        u.at(j, 1) = 0.3;  // higher modes carry no mass
        u.at(j, 2) = -0.2;
    }
    // h = 0.5, averages 1..8 sum to 36
    CHECK(mass(u) == doctest::Approx(18.0).epsilon(1e-13));
}

TEST_CASE("entropy norm of a continuous linear q is the volume term only") {
    // q = x with unit mobility: ||q||_E^2 = int_a^b 1 dx = b - a
    const Mesh mesh = build_mesh(0.0, 2.0, 5);
    const ModelSpec model = quadratic_entropy_flat_phi();
    const DGField q = project_l2([](double x) { return x; }, mesh, Basis{1},
                                 gauss_quadrature(4));
    DGField u(mesh, 1);
    for (int j = 0; j < mesh.n_cells; ++j) u.at(j, 0) = 1.0;
    CHECK(entropy_norm_q(q, u, model, {4.0, 1.0 / 12.0}, gauss_quadrature(4)) ==
          doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("entropy norm jump term matches a hand-computed discontinuity") {
    // piecewise constants 0 and 1 on two cells, unit mobility:
    // volume term zero, single jump: beta0/h * [q]^2 = 4 / 1 * 1 = 4
    const Mesh mesh = build_mesh(0.0, 2.0, 2);
    const ModelSpec model = quadratic_entropy_flat_phi();
    DGField q(mesh, 1);
    q.at(1, 0) = 1.0;
    DGField u(mesh, 1);
    for (int j = 0; j < 2; ++j) u.at(j, 0) = 1.0;
    CHECK(entropy_norm_q(q, u, model, {4.0, 0.0}, gauss_quadrature(4)) ==
          doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("l1_error of constant 1 against reference 0 on [-1, 1] is 2") {
    const Mesh mesh = build_mesh(-1.0, 1.0, 10);
    DGField u(mesh, 2);
    for (int j = 0; j < mesh.n_cells; ++j) u.at(j, 0) = 1.0;
    CHECK(l1_error(u, [](double) { return 0.0; }) == doctest::Approx(2.0).epsilon(1e-13));
    // and against itself as a field it is zero
    CHECK(l1_error(u, u) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("l1_error against an analytic reference integrates |u - ref|") {
    // u = 0, ref = x on [0, 1]: integral of |x| = 1/2
    const Mesh mesh = build_mesh(0.0, 1.0, 8);
    DGField u(mesh, 1);
    CHECK(l1_error(u, [](double x) { return x; }) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("l1 projection error of a smooth function decays at order k+1") {
    auto g = [](double x) { return std::exp(std::sin(2.0 * x)); };
    for (int k : {1, 2}) {
        std::vector<double> errs, hs;
        for (int n : {8, 16, 32}) {
            const Mesh mesh = build_mesh(-1.0, 1.0, n);
            const DGField u = project_l2(g, mesh, Basis{k}, gauss_quadrature(k + 3));
            errs.push_back(l1_error(u, g));
            hs.push_back(mesh.h);
        }
        const auto orders = convergence_orders(errs, hs);
        for (double p : orders) {
            CHECK(p > k + 0.7);
            CHECK(p < k + 1.3);
        }
    }
}

TEST_CASE("max_interface_jump finds the largest discontinuity") {
    const Mesh mesh = build_mesh(0.0, 1.0, 4);
    DGField q(mesh, 1);
    q.at(0, 0) = 0.0;
    q.at(1, 0) = 0.5;   // jump 0.5
    q.at(2, 0) = -0.7;  // jump 1.2
    q.at(3, 0) = -0.7;  // jump 0
    CHECK(max_interface_jump(q) == doctest::Approx(1.2).epsilon(1e-13));

    const DGField smooth = project_l2([](double x) { return 3.0 * x; }, mesh, Basis{1},
                                      gauss_quadrature(3));
    CHECK(max_interface_jump(smooth) < 1e-13);
}

TEST_CASE("convergence_orders closed-form values") {
    const auto simple = convergence_orders({4e-2, 1e-2}, {0.2, 0.1});
    REQUIRE(simple.size() == 1);
    CHECK(simple[0] == doctest::Approx(2.0).epsilon(1e-12));

    const auto tabulated = convergence_orders({3.9026e-5, 5.3072e-6}, {0.2, 0.1});
    CHECK(tabulated[0] == doctest::Approx(2.91).epsilon(1e-2));

    const auto third = convergence_orders({8e-3, 1e-3}, {0.2, 0.1});
    CHECK(third[0] == doctest::Approx(3.0).epsilon(1e-12));

    const auto chain = convergence_orders({1e-1, 1e-2, 1e-3}, {0.4, 0.2, 0.1});
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == doctest::Approx(std::log2(10.0)).epsilon(1e-12));
}

TEST_CASE("convergence_orders input validation") {
    CHECK_THROWS_AS(convergence_orders({1e-2}, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_orders({1e-2, 1e-3}, {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_orders({1e-2, 0.0}, {0.2, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_orders({1e-2, -1e-3}, {0.2, 0.1}), std::invalid_argument);
}

TEST_CASE("l1_error against a refined-field reference matches the analytic error") {
    auto g = [](double x) { return std::sin(2.0 * x) + 1.5; };
    const Mesh coarse = build_mesh(-1.0, 1.0, 10);
    const Mesh fine = build_mesh(-1.0, 1.0, 80);
    const DGField uc = project_l2(g, coarse, Basis{2}, gauss_quadrature(5));
    const DGField uf = project_l2(g, fine, Basis{2}, gauss_quadrature(5));
    const double against_exact = l1_error(uc, g);
    const double against_field = l1_error(uc, uf);
    CHECK(against_field ==
          doctest::Approx(against_exact).epsilon(1e-3));
}
