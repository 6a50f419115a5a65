#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bilab/quadrature.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace bilab;
constexpr double pi = std::numbers::pi;

TEST_CASE("sphere rule total weights match surface areas") {
    double w = 0;
    for (double v : sphere_rule(2, 8).weights) w += v;
    CHECK(w == doctest::Approx(2 * pi).epsilon(1e-12));

    for (int k : {3, 4, 6}) {
        const SphereRule r = sphere_rule(k, 8);
        double s = 0;
        for (double v : r.weights) s += v;
        CHECK(s == doctest::Approx(sphere_area(k)).epsilon(1e-10));
    }
    CHECK(sphere_area(4) == doctest::Approx(2 * pi * pi).epsilon(1e-14));
    CHECK(sphere_area(6) == doctest::Approx(pi * pi * pi).epsilon(1e-14));
}

TEST_CASE("second moments on S^3") {
    const SphereRule r = sphere_rule(4, 8);
    for (int axis = 0; axis < 4; ++axis) {
        const double m = integrate_sphere(r, [axis](std::span<const double> w) {
            return w[axis] * w[axis];
        });
        CHECK(m == doctest::Approx(pi * pi / 2).epsilon(1e-8));
    }
    const double cross = integrate_sphere(r, [](std::span<const double> w) {
        return w[0] * w[1];
    });
    CHECK(std::abs(cross) <= 1e-12);
}

TEST_CASE("monomial moments against the Gamma-formula oracle") {
    for (int k : {2, 3, 4}) {
        const SphereRule r = sphere_rule(k, 10);
        const std::vector<std::vector<int>> cases = {
            {2, 0, 0, 0}, {4, 2, 0, 0}, {2, 2, 2, 0}, {6, 0, 0, 0},
            {3, 0, 0, 0}, {1, 2, 0, 0}, {2, 1, 1, 0}};
        for (const auto& full : cases) {
            std::vector<int> a(full.begin(), full.begin() + k);
            int degree = 0;
            for (int e : a) degree += e;
            if (degree > 6) continue;
            const double expect = oracles::sphere_monomial_moment(a);
            const double got = integrate_sphere(r, [&](std::span<const double> w) {
                double m = 1;
                for (int i = 0; i < k; ++i)
                    for (int e = 0; e < a[i]; ++e) m *= w[i];
                return m;
            });
            if (expect == 0.0)
                CHECK(std::abs(got) <= 1e-12);
            else
                CHECK(got == doctest::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("odd integrand vanishes") {
    for (int k : {2, 3, 4, 6}) {
        const SphereRule r = sphere_rule(k, 6);
        const double v = integrate_sphere(r, [](std::span<const double> w) {
            return w[0] * w[0] * w[0];
        });
        CHECK(std::abs(v) <= 1e-12);
    }
}

TEST_CASE("ball rule total weights") {
    {
        double s = 0;
        for (double v : ball_rule(2, 8, false).weights) s += v;
        CHECK(s == doctest::Approx(pi).epsilon(1e-10));
    }
    {
        // at d = 2 the slicing weight is identically one
        double s = 0;
        for (double v : ball_rule(2, 8, true).weights) s += v;
        CHECK(s == doctest::Approx(pi).epsilon(1e-10));
    }
    {
        double s = 0;
        for (double v : ball_rule(3, 8, false).weights) s += v;
        CHECK(s == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-10));
    }
    {
        // oracle: 4 pi int_0^1 r^2 sqrt(1-r^2) dr, smoothed by r = sin(u)
        const double expect = 4.0 * pi * oracles::dense_integral(
            [](double u) {
                const double s = std::sin(u), c = std::cos(u);
                return s * s * c * c;
            }, 0.0, 0.5 * pi);
        double s = 0;
        for (double v : ball_rule(3, 8, true).weights) s += v;
        CHECK(s == doctest::Approx(expect).epsilon(1e-8));
        CHECK(expect == doctest::Approx(pi * pi / 4.0).epsilon(1e-10));
    }
}

TEST_CASE("weights are strictly positive and nodes admissible") {
    for (int k : {2, 3, 4, 6}) {
        const SphereRule r = sphere_rule(k, 6);
        for (double w : r.weights) CHECK(w > 0.0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            double q = 0;
            for (double c : r.node(i)) q += c * c;
            CHECK(std::abs(std::sqrt(q) - 1.0) <= 1e-12);
        }
    }
    for (int d : {2, 3}) {
        const BallRule b = ball_rule(d, 6, true);
        for (double w : b.weights) CHECK(w > 0.0);
        for (std::size_t i = 0; i < b.size(); ++i) {
            double q = 0;
            for (double c : b.node(i)) q += c * c;
            CHECK(q < 1.0);
        }
    }
}

TEST_CASE("refinement convergence on a smooth integrand") {
    auto F = [](std::span<const double> w) {
        return std::exp(w[0] - 0.3 * w[1]) * std::cos(w[2]);
    };
    const double fine = integrate_sphere(sphere_rule(4, 48), F);
    double prev = std::abs(integrate_sphere(sphere_rule(4, 6), F) - fine);
    for (int order : {12, 24}) {
        const double err = std::abs(integrate_sphere(sphere_rule(4, order), F) - fine);
        CHECK(err <= prev * (1 + 1e-12));
        prev = err;
    }
}

TEST_CASE("rule preconditions") {
    CHECK_THROWS_AS(sphere_rule(5, 8), std::invalid_argument);
    CHECK_THROWS_AS(sphere_rule(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(ball_rule(4, 8, false), std::invalid_argument);
    CHECK_THROWS_AS(ball_rule(2, 2, false), std::invalid_argument);
}

TEST_CASE("rules print as CSV") {
    const SphereRule r = sphere_rule(2, 4);
    const std::string csv = r.to_csv();
    CHECK(csv.find('\n') != std::string::npos);
    std::size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == r.size());
}
