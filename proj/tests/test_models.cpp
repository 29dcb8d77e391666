#include <cmath>
#include <stdexcept>
#include <map>
#include <string>

#include <doctest.h>

#include "esdg/models.hpp"

using namespace esdg;

TEST_CASE("general_fp model evaluates f, Phi, H' consistently") {
    const ModelSpec m = make_model("general_fp", {{"N", 3.0}});
    CHECK(m.f(2.0) == doctest::Approx(18.0).epsilon(1e-13));
    CHECK(m.phi(1.0) == doctest::Approx(0.5).epsilon(1e-13));
    // H'(u) = log(u / (1+u^3)^{1/3})
    CHECK(m.h_prime(1.0) == doctest::Approx(std::log(1.0 / std::cbrt(2.0))).epsilon(1e-12));
    CHECK_FALSE(m.trivial_potential_quadratic_H);
}

TEST_CASE("double_well model potential and entropy derivative") {
    const ModelSpec m = make_model("double_well", {{"nu", 1.0}, {"m", 2.0}});
    CHECK(m.phi(1.0) == doctest::Approx(-0.25).epsilon(1e-13));
    CHECK(m.f(0.7) == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(m.h_prime(0.3) == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("porous_medium model is stored in the reformulated variables") {
    const ModelSpec m = make_model("porous_medium", {{"m", 2.0}});
    CHECK(m.trivial_potential_quadratic_H);
    // mobility f H'' = 2u for m = 2: f(3) = 6 with quadratic H (H'' = 1)
    CHECK(m.mobility(3.0) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(m.phi(0.37) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("porous_medium_convection model fields") {
    const ModelSpec m = make_model("porous_medium_convection", {{"m", 2.0}});
    CHECK_FALSE(m.trivial_potential_quadratic_H);
    CHECK(m.f(0.25) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(m.phi(0.4) == doctest::Approx(0.4).epsilon(1e-13));
    // H'(u) = m/(m-1) u^{m-1} = 2u for m = 2
    CHECK(m.h_prime(2.0) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("make_model rejects bad input") {
    CHECK_THROWS_AS(make_model("no_such_model"), std::invalid_argument);
    CHECK_THROWS_AS(make_model("porous_medium", {{"m", 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_model("porous_medium", {{"m", 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(make_model("porous_medium_convection", {{"m", 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("dirichlet boundary condition carries both values") {
    const BoundaryCondition bc = BoundaryCondition::dirichlet(1.0, 2.0);
    CHECK(bc.kind == BoundaryCondition::Kind::Dirichlet);
    REQUIRE(bc.left_value.has_value());
    REQUIRE(bc.right_value.has_value());
    CHECK(*bc.left_value == 1.0);
    CHECK(*bc.right_value == 2.0);
    CHECK(BoundaryCondition::zero_flux().kind == BoundaryCondition::Kind::ZeroFlux);
}

TEST_CASE("entropy derivative chain H -> H' -> H'' is consistent") {
    const double us[] = {0.1, 0.5, 1.0, 2.0, 5.0};
    const char* names[] = {"porous_medium", "porous_medium_convection", "double_well",
                           "general_fp"};
    for (const char* name : names) {
        std::map<std::string, double> params;
        if (std::string(name) == "double_well") params = {{"nu", 1.0}, {"m", 2.0}};
        else if (std::string(name) == "general_fp") params = {{"N", 3.0}};
        else params = {{"m", 2.0}};
        const ModelSpec m = make_model(name, params);
        const double step = 1e-5;
        for (double u : us) {
            const double d1 = (m.h_entropy(u + step) - m.h_entropy(u - step)) / (2 * step);
            const double d2 = (m.h_prime(u + step) - m.h_prime(u - step)) / (2 * step);
            CHECK(std::abs(d1 - m.h_prime(u)) <= 1e-6 * std::max(1.0, std::abs(m.h_prime(u))));
            CHECK(std::abs(d2 - m.h_double_prime(u)) <=
                  1e-6 * std::max(1.0, std::abs(m.h_double_prime(u))));
        }
    }
}

TEST_CASE("mobility of built-in models is nonnegative for u >= 0") {
    const char* names[] = {"porous_medium", "porous_medium_convection", "double_well",
                           "general_fp"};
    for (const char* name : names) {
        std::map<std::string, double> params;
        if (std::string(name) == "double_well") params = {{"nu", 1.0}, {"m", 2.0}};
        else if (std::string(name) == "general_fp") params = {{"N", 3.0}};
        else params = {{"m", 2.0}};
        const ModelSpec m = make_model(name, params);
        for (int i = 0; i <= 100; ++i) {
            const double u = 0.1 * i;
            CHECK(m.f(u) >= -1e-14);
            CHECK(m.mobility(u) >= -1e-14);
        }
    }
}

TEST_CASE("barenblatt profile values") {
    // B_2(0, 0.1) = 0.1^{-1/3} * 0.2
    CHECK(barenblatt(2.0, 0.0, 0.1) ==
          doctest::Approx(0.2 * std::pow(0.1, -1.0 / 3.0)).epsilon(1e-12));
    CHECK(barenblatt(2.0, 0.0, 0.1) == doctest::Approx(0.4308869).epsilon(1e-6));
    CHECK(barenblatt(2.0, 5.0, 0.1) == 0.0);
    const double x_edge = std::sqrt(2.4 * std::pow(0.1, 2.0 / 3.0));
    CHECK(x_edge == doctest::Approx(0.719).epsilon(2e-3));
    CHECK(barenblatt(2.0, x_edge * (1 + 1e-12), 0.1) == 0.0);
    CHECK(barenblatt(2.0, x_edge * 0.999, 0.1) > 0.0);
    CHECK_THROWS_AS(barenblatt(2.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(barenblatt(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("barenblatt mass is time-independent") {
    auto mass_at = [](double t) {
        const double edge = std::sqrt(2.4 * std::pow(t, 2.0 / 3.0));
        const int n = 20000;
        double acc = 0.0;
        const double dx = 2 * edge / n;
        for (int i = 0; i < n; ++i) {
            const double x = -edge + (i + 0.5) * dx;
            acc += barenblatt(2.0, x, t) * dx;
        }
        return acc;
    };
    const double m1 = mass_at(0.1), m2 = mass_at(0.5);
    CHECK(std::abs(m1 - m2) < 1e-6 * m1);
}

TEST_CASE("barenblatt satisfies the porous medium equation away from the front") {
    // residual d/dt B - d^2/dx^2 (B^2) at smooth interior points, m = 2, t = 0.5
    const double t = 0.5, dt = 1e-5, dx = 1e-4;
    for (double x : {0.0, 0.2, 0.4, -0.3}) {
        const double bt =
            (barenblatt(2.0, x, t + dt) - barenblatt(2.0, x, t - dt)) / (2 * dt);
        auto b2 = [&](double xx) {
            const double b = barenblatt(2.0, xx, t);
            return b * b;
        };
        const double bxx = (b2(x + dx) - 2 * b2(x) + b2(x - dx)) / (dx * dx);
        CHECK(std::abs(bt - bxx) < 1e-3);
    }
}
