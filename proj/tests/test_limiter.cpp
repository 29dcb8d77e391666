#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "esdg/limiter.hpp"
#include "esdg/mesh.hpp"
#include "esdg/projector.hpp"
#include "esdg/quadrature.hpp"

using namespace esdg;

TEST_CASE("cell_min closed-form cases") {
    const double l2_only[] = {0.0, 0.0, 1.0};  // L_2(xi), min -1/2 at xi = 0
    CHECK(cell_min(l2_only, 2) == doctest::Approx(-0.5).epsilon(1e-14));

    const double affine[] = {2.0, 1.0};  // 2 + xi, min 1 at xi = -1
    CHECK(cell_min(affine, 1) == doctest::Approx(1.0).epsilon(1e-14));

    const double constant[] = {7.0};
    CHECK(cell_min(constant, 0) == doctest::Approx(7.0).epsilon(1e-14));

    // 1 - xi^2 = 2/3 - (2/3) L_2: interior max, boundary min 0
    const double cap[] = {2.0 / 3.0, 0.0, -2.0 / 3.0};
    CHECK(cell_min(cap, 2) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("cell_min matches a dense sampling oracle for cubics") {
    std::mt19937 rng(505);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 150; ++trial) {
        const int k = 1 + trial % 3;
        std::vector<double> c((std::size_t)k + 1);
        for (double& v : c) v = dist(rng);
        const double exact = cell_min(c, k);
        double sampled = 1e300;
        for (int i = 0; i <= 4000; ++i) {
            const double xi = -1.0 + 2.0 * i / 4000.0;
            const auto lv = legendre_eval(k, xi);
            double val = 0.0;
            for (int m = 0; m <= k; ++m) val += c[(std::size_t)m] * lv.values[(std::size_t)m];
            sampled = std::min(sampled, val);
        }
        // exact minimum can only be at or below the sampled one, and the
        // sampling grid is fine enough to get within 1e-5
        CHECK(exact <= sampled + 1e-12);
        CHECK(sampled - exact < 1e-5);
    }
}

TEST_CASE("reconstruct_positive leaves admissible cells untouched") {
    const Mesh mesh = build_mesh(0.0, 1.0, 4);
    DGField u(mesh, 2);
    for (int j = 0; j < 4; ++j) {
        u.at(j, 0) = 2.0;
        u.at(j, 1) = 0.5;
        u.at(j, 2) = 0.1;
    }
    const DGField v = reconstruct_positive(u, {.delta = 0.0});
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) CHECK(v.coeffs[i] == u.coeffs[i]);
}

TEST_CASE("reconstruct_positive squeeze: average 1, minimum -1, delta 0") {
    const Mesh mesh = build_mesh(0.0, 1.0, 2);
    DGField u(mesh, 1);
    u.at(0, 0) = 1.0;
    u.at(0, 1) = 2.0;  // 1 + 2 xi: min -1 at xi = -1, theta = 1/2
    u.at(1, 0) = 1.0;
    std::vector<LimiterEvent> events;
    const DGField v = reconstruct_positive(u, {.delta = 0.0}, &events);
    CHECK(v.at(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(v.at(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cell_min({v.cell_data(0), 2}, 1) >= 0.0);
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == LimiterEvent::Kind::Squeeze);
    CHECK(events[0].cell == 0);
}

TEST_CASE("reconstruct_positive is disabled by config") {
    const Mesh mesh = build_mesh(0.0, 1.0, 2);
    DGField u(mesh, 1);
    u.at(0, 0) = 1.0;
    u.at(0, 1) = 5.0;
    const DGField v = reconstruct_positive(u, {.delta = 0.0, .enabled = false});
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) CHECK(v.coeffs[i] == u.coeffs[i]);
}

TEST_CASE("random squeezes preserve averages, enforce the floor, idempotent") {
    std::mt19937 rng(606);
    std::uniform_real_distribution<double> avg_dist(0.05, 3.0);
    std::uniform_real_distribution<double> mode_dist(-2.0, 2.0);
    std::uniform_real_distribution<double> delta_dist(0.0, 0.02);
    for (int trial = 0; trial < 150; ++trial) {
        const int k = 1 + trial % 3;
        const Mesh mesh = build_mesh(-1.0, 1.0, 6);
        DGField u(mesh, k);
        for (int j = 0; j < mesh.n_cells; ++j) {
            u.at(j, 0) = avg_dist(rng);
            for (int i = 1; i <= k; ++i) u.at(j, i) = mode_dist(rng);
        }
        const double delta = delta_dist(rng);
        // keep averages strictly above delta so the squeeze branch is taken
        for (int j = 0; j < mesh.n_cells; ++j)
            u.at(j, 0) = std::max(u.at(j, 0), delta + 0.05);

        const DGField v = reconstruct_positive(u, {.delta = delta});
        for (int j = 0; j < mesh.n_cells; ++j) {
            CHECK(std::abs(v.at(j, 0) - u.at(j, 0)) < 1e-14);
            CHECK(cell_min({v.cell_data(j), (std::size_t)k + 1}, k) >= delta - 1e-13);
        }
        const DGField w = reconstruct_positive(v, {.delta = delta});
        for (std::size_t i = 0; i < v.coeffs.size(); ++i) CHECK(w.coeffs[i] == v.coeffs[i]);
    }
}

TEST_CASE("skip_zero_cells leaves identically-zero cells alone") {
    const Mesh mesh = build_mesh(0.0, 1.0, 3);
    DGField u(mesh, 2);
    u.at(0, 0) = 1.0;
    // cell 1 identically zero; cell 2 admissible
    u.at(2, 0) = 0.5;
    const DGField v =
        reconstruct_positive(u, {.delta = 1e-3, .skip_zero_cells = true});
    CHECK(v.at(1, 0) == 0.0);
    CHECK(v.at(1, 1) == 0.0);
    CHECK(v.at(1, 2) == 0.0);
    // without the skip the zero average is far below delta: hard error
    CHECK_THROWS_AS(reconstruct_positive(u, {.delta = 1e-3}), LimiterFailure);
}

TEST_CASE("error fallback reports the offending cell") {
    const Mesh mesh = build_mesh(0.0, 1.0, 4);
    DGField u(mesh, 1);
    for (int j = 0; j < 4; ++j) u.at(j, 0) = 1.0;
    u.at(2, 0) = -0.5;  // negative average in cell 2
    u.at(2, 1) = 0.1;
    try {
        reconstruct_positive(u, {.delta = 1e-6});
        FAIL("expected LimiterFailure");
    } catch (const LimiterFailure& e) {
        CHECK(e.cell() == 2);
    }
}

TEST_CASE("flatten-and-track fallback flattens and records a conservation break") {
    const Mesh mesh = build_mesh(0.0, 1.0, 3);
    DGField u(mesh, 2);
    u.at(0, 0) = 1.0;
    u.at(1, 0) = -0.25;  // well below delta: flattened to delta, mass injected
    u.at(1, 1) = 0.3;
    u.at(2, 0) = 1.0;
    std::vector<LimiterEvent> events;
    const DGField v = reconstruct_positive(
        u, {.delta = 1e-8, .fallback = LimiterConfig::Fallback::FlattenAndTrack}, &events);
    CHECK(v.at(1, 0) == doctest::Approx(1e-8).epsilon(1e-14));
    CHECK(v.at(1, 1) == 0.0);
    CHECK(v.at(1, 2) == 0.0);
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == LimiterEvent::Kind::ConservationBreak);
    CHECK(events[0].cell == 1);
}

TEST_CASE("averages within round-off of the floor are flattened quietly") {
    const Mesh mesh = build_mesh(0.0, 1.0, 2);
    DGField u(mesh, 1);
    const double delta = 1e-8;
    u.at(0, 0) = delta;  // exactly at the floor, sub-cell undershoot
    u.at(0, 1) = 1e-9;
    u.at(1, 0) = 1.0;
    std::vector<LimiterEvent> events;
    const DGField v = reconstruct_positive(u, {.delta = delta}, &events);
    CHECK(v.at(0, 0) == doctest::Approx(delta).epsilon(1e-14));
    CHECK(v.at(0, 1) == 0.0);
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == LimiterEvent::Kind::Flatten);
}

TEST_CASE("limiting a smooth nonnegative profile is high-order accurate") {
    // u(x) = 1 + cos(pi x) on [-1, 1] touches zero at the boundary; the
    // projection undershoots there and the squeeze correction must shrink
    // like h^{k+1} when delta < h^{k+1}
    auto g = [](double x) { return 1.0 + std::cos(M_PI * x); };
    for (int k : {1, 2}) {
        std::vector<double> correction;
        for (int n : {10, 20, 40}) {
            const Mesh mesh = build_mesh(-1.0, 1.0, n);
            const double delta = 0.1 * std::pow(mesh.h, k + 1);
            const DGField u = project_l2(g, mesh, Basis{k}, gauss_quadrature(k + 3));
            const DGField v = reconstruct_positive(u, {.delta = delta});
            const auto rule = gauss_quadrature(k + 3);
            double l1 = 0.0;
            for (int j = 0; j < mesh.n_cells; ++j)
                for (int p = 0; p < rule.n_points; ++p)
                    l1 += 0.5 * mesh.h * rule.weights[(std::size_t)p] *
                          std::abs(v.eval(j, rule.nodes[(std::size_t)p]) -
                                   u.eval(j, rule.nodes[(std::size_t)p]));
            correction.push_back(l1);
        }
        // each halving of h must shrink the correction by at least 2^k
        // (the asymptotic rate is k+1; allow one order of slack)
        CHECK(correction[1] <= correction[0] / std::pow(2.0, k) + 1e-15);
        CHECK(correction[2] <= correction[1] / std::pow(2.0, k) + 1e-15);
        // and the correction is bounded by a fixed multiple of h^{k+1}
        CHECK(correction[2] <= 10.0 * std::pow(2.0 / 40.0, k + 1));
    }
}
