#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "susd/errors.hpp"
#include "susd/perception.hpp"

using namespace susd;

namespace {

// Power-iteration oracle for the dominant eigenpair of a symmetric 2x2.
// Shifting by ||A||_F + 1 makes the matrix positive definite with unchanged
// eigenvectors, so the major axis is always the dominant direction.
PrincipalAxes power_iteration_axes(const SymMat2& a, int iterations) {
    const double shift = 1.0 + std::sqrt(a.c11 * a.c11 + 2.0 * a.c12 * a.c12 + a.c22 * a.c22);
    const SymMat2 shifted{a.c11 + shift, a.c12, a.c22 + shift};

    Vec2 best{1.0, 0.0};
    double best_growth = -1.0;
    for (Vec2 start : {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}}) {
        Vec2 v = start;
        for (int it = 0; it < iterations; ++it) v = normalized(mul(shifted, v));
        const double growth = dot(v, mul(shifted, v));
        if (growth > best_growth) {
            best_growth = growth;
            best = v;
        }
    }

    PrincipalAxes axes;
    axes.q = best;
    axes.n = rotate90(best);
    axes.lambda_q = dot(best, mul(a, best));
    axes.lambda_n = dot(axes.n, mul(a, axes.n));
    return axes;
}

SymMat2 random_psd(std::mt19937_64& rng, double gap_low, double gap_high) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lambda_n = 0.2 + 1.8 * unit(rng);
    const double lambda_q = lambda_n + gap_low + (gap_high - gap_low) * unit(rng);
    const double angle = 3.141592653589793 * unit(rng);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {lambda_q * c * c + lambda_n * s * s, (lambda_q - lambda_n) * c * s,
            lambda_q * s * s + lambda_n * c * c};
}

}  // namespace

TEST_CASE("local center is the member mean") {
    const Vec2 c = local_center({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
    CHECK(c.x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(c.y == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("covariance of a right triangle matches the hand computation") {
    const SymMat2 c = covariance({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
    CHECK(c.c11 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(c.c22 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(c.c12 == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));

    const PrincipalAxes axes = exact_principal_axes(c, {1.0, 0.0});
    CHECK(axes.lambda_q == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(axes.lambda_n == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(axes.q.x == doctest::Approx(inv_sqrt2).epsilon(1e-13));
    CHECK(axes.q.y == doctest::Approx(-inv_sqrt2).epsilon(1e-13));
}

TEST_CASE("covariance needs at least two members") {
    CHECK_THROWS_AS(covariance({}), DegenerateInputError);
    CHECK_THROWS_AS(covariance({{1.0, 2.0}}), DegenerateInputError);
}

TEST_CASE("covariance is unnormalized and translation invariant") {
    const std::vector<Vec2> base{{0.2, -0.4}, {1.3, 0.8}, {-0.7, 0.5}, {0.4, 1.9}};
    std::vector<Vec2> shifted = base;
    for (auto& r : shifted) r += Vec2{17.0, -4.0};
    const SymMat2 a = covariance(base);
    const SymMat2 b = covariance(shifted);
    CHECK(a.c11 == doctest::Approx(b.c11).epsilon(1e-12));
    CHECK(a.c12 == doctest::Approx(b.c12).epsilon(1e-12));
    CHECK(a.c22 == doctest::Approx(b.c22).epsilon(1e-12));
    CHECK(trace(a) > 0.0);
}

TEST_CASE("eigenvectors are fixed points of the perception flow") {
    const SymMat2 c{2.0, 0.0, 1.0};
    const Vec2 major = oja_flow(c, {1.0, 0.0}, 5.0, 0.01);
    CHECK(major.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(major.y) <= 1e-14);
    const Vec2 minor = oja_flow(c, {0.0, 1.0}, 5.0, 0.01);
    CHECK(std::abs(minor.x) <= 1e-14);
    CHECK(minor.y == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("perception flow converges to the major axis") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const SymMat2 c = random_psd(rng, 0.3, 2.5);
        const PrincipalAxes axes = exact_principal_axes(c, {1.0, 0.0});
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double a0 = (unit(rng) - 0.5) * 2.8;  // keep away from the minor axis
        const Vec2 q0 = std::cos(a0) * axes.q + std::sin(a0) * axes.n;
        const Vec2 q = oja_flow(c, q0, 40.0, 0.01);
        CHECK(std::abs(dot(q, axes.q)) >= 1.0 - 1e-9);
        CHECK(std::abs(norm(q) - 1.0) <= 1e-12);
    }
}

TEST_CASE("perception flow follows the exact tangent decay law") {
    const SymMat2 c{2.4, 0.0, 1.1};  // axes aligned with the grid, gap 1.3
    const double a0 = 0.9;
    const Vec2 q0{std::cos(a0), std::sin(a0)};
    const double tau = 2.0;
    const Vec2 q = oja_flow(c, q0, tau, 1e-4);
    const double tan_exact = std::tan(a0) * std::exp(-1.3 * tau);
    const double angle_exact = std::atan(tan_exact);
    CHECK(std::atan2(q.y, q.x) == doctest::Approx(angle_exact).epsilon(5e-4));
}

TEST_CASE("misalignment decays monotonically along the flow") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const SymMat2 c = random_psd(rng, 0.4, 2.0);
        const PrincipalAxes axes = exact_principal_axes(c, {1.0, 0.0});
        const Vec2 q0 = normalized(axes.q + 1.4 * axes.n);
        std::vector<Vec2> trace;
        oja_flow_trace(c, q0, 10.0, 0.02, &trace);
        CHECK(trace.size() == 500);
        double prev = 1.0 - std::abs(dot(q0, axes.q));
        for (const Vec2& q : trace) {
            const double mis = 1.0 - std::abs(dot(q, axes.q));
            CHECK(mis <= prev + 1e-12);
            prev = mis;
        }
    }
}

TEST_CASE("trace ends at the returned state") {
    const SymMat2 c{1.7, 0.3, 0.6};
    std::vector<Vec2> trace;
    const Vec2 q = oja_flow_trace(c, normalized({0.3, 1.0}), 3.0, 0.01, &trace);
    REQUIRE(!trace.empty());
    CHECK(trace.back().x == q.x);
    CHECK(trace.back().y == q.y);
    CHECK(oja_flow(c, normalized({0.3, 1.0}), 3.0, 0.01).x == q.x);
}

TEST_CASE("perception flow validates its arguments") {
    const SymMat2 c{1.0, 0.0, 0.5};
    CHECK_THROWS_AS(oja_flow(c, {0.0, 0.0}, 1.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(oja_flow(c, {1.0, 0.0}, 0.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(oja_flow(c, {1.0, 0.0}, -1.0, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(oja_flow(c, {1.0, 0.0}, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(oja_flow(c, {1.0, 0.0}, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("closed form matches the power-iteration oracle") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const SymMat2 c = random_psd(rng, 0.05, 2.5);
        const PrincipalAxes exact = exact_principal_axes(c, {1.0, 0.0});
        const PrincipalAxes oracle = power_iteration_axes(c, 10000);
        CHECK(std::abs(exact.lambda_q - oracle.lambda_q) <= 1e-10 * std::max(1.0, exact.lambda_q));
        CHECK(std::abs(exact.lambda_n - oracle.lambda_n) <= 1e-10 * std::max(1.0, exact.lambda_q));
        CHECK(1.0 - std::abs(dot(exact.q, oracle.q)) <= 1e-8);
    }
}

TEST_CASE("exact axes satisfy the eigen equations and the sign convention") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const SymMat2 c = random_psd(rng, 0.01, 3.0);
        const Vec2 ref = normalized({std::cos(0.1 * trial), std::sin(0.1 * trial)});
        const PrincipalAxes axes = exact_principal_axes(c, ref);
        CHECK(norm(mul(c, axes.q) - axes.lambda_q * axes.q) <= 1e-12 * std::max(1.0, axes.lambda_q));
        CHECK(norm(mul(c, axes.n) - axes.lambda_n * axes.n) <= 1e-12 * std::max(1.0, axes.lambda_q));
        CHECK(axes.lambda_q >= axes.lambda_n);
        CHECK(dot(axes.q, ref) >= 0.0);
        CHECK(std::abs(norm(axes.q) - 1.0) <= 1e-14);
        CHECK(axes.n.x == rotate90(axes.q).x);
        CHECK(axes.n.y == rotate90(axes.q).y);
        CHECK(axes.lambda_q + axes.lambda_n == doctest::Approx(trace(c)).epsilon(1e-12));
    }
}

TEST_CASE("tied eigenvalues fall back to the reference direction") {
    const SymMat2 c{1.5, 0.0, 1.5};
    const Vec2 ref = normalized({0.6, 0.8});
    const PrincipalAxes axes = exact_principal_axes(c, ref);
    CHECK(axes.q.x == doctest::Approx(ref.x).epsilon(1e-14));
    CHECK(axes.q.y == doctest::Approx(ref.y).epsilon(1e-14));
    CHECK(axes.gap() <= kDegenerateGap);
}
