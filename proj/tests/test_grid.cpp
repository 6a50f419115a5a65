#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bilab/grid.hpp"
#include "oracles.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>

using namespace bilab;
constexpr double pi = std::numbers::pi;

TEST_CASE("lp_norm closed forms") {
    GridFunction one = make_constant(2, 16, 1.0, 1.0);
    CHECK(lp_norm(one, 0.5) == doctest::Approx(1.0).epsilon(1e-12));

    // indicator of exactly half the cells on the unit box
    GridFunction half = make_grid(2, 16, 1.0);
    for (std::size_t i = 0; i < half.size() / 2; ++i) half.values[i] = 1.0;
    CHECK(lp_norm(half, 1.0) == doctest::Approx(0.5).epsilon(1e-12));

    GridFunction f = make_band_limited(2, 16, 1.0, 3, 42);
    double sup = 0;
    for (auto& v : f.values) sup = std::max(sup, std::abs(v));
    CHECK(lp_norm(f, 0.0) == doctest::Approx(sup).epsilon(1e-15));
}

TEST_CASE("lp_norm against sorted re-summation oracle") {
    GridFunction f = make_band_limited(2, 32, 1.0, 5, 7);
    std::vector<double> mags(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) mags[i] = std::abs(f.values[i]);
    const double expect =
        std::sqrt(f.cell_volume() * oracles::sorted_power_sum(mags, 2.0));
    CHECK(lp_norm(f, 0.5) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("lorentz norm closed forms and consistency") {
    const int n = 16;
    GridFunction f = make_grid(2, n, 2.0);
    const int m = 37;  // indicator of m cells
    for (int i = 0; i < m; ++i) f.values[static_cast<std::size_t>(i) * 3 + 1] = 1.0;
    const double measure = m * f.cell_volume();

    CHECK(lorentz_norm(f, 0.5, 0.0) == doctest::Approx(std::sqrt(measure)).epsilon(1e-12));
    CHECK(lorentz_norm(f, 0.5, 0.5) == doctest::Approx(std::sqrt(measure)).epsilon(1e-12));

    GridFunction g = make_band_limited(2, n, 2.0, 4, 11);
    for (double up : {1.0, 0.5, 0.25})
        CHECK(lorentz_norm(g, up, up) == doctest::Approx(lp_norm(g, up)).epsilon(1e-10));

    CHECK_THROWS_AS(lorentz_norm(g, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("lorentz norm is rearrangement invariant") {
    GridFunction f = make_band_limited(2, 16, 1.0, 3, 5);
    GridFunction g = f;
    std::mt19937_64 rng(3);
    std::shuffle(g.values.begin(), g.values.end(), rng);
    CHECK(lorentz_norm(f, 0.5, 0.25) == lorentz_norm(g, 0.5, 0.25));
    CHECK(lorentz_norm(f, 0.75, 0.0) == lorentz_norm(g, 0.75, 0.0));
}

TEST_CASE("norm nesting on the unit box") {
    GridFunction f = make_band_limited(2, 16, 1.0, 4, 13, 0.3);
    const double ups[4] = {1.0, 0.5, 0.25, 0.0};
    for (int i = 0; i + 1 < 4; ++i)
        CHECK(lp_norm(f, ups[i]) <= lp_norm(f, ups[i + 1]) * (1 + 1e-12));
}

TEST_CASE("sample reproduces nodes and constants") {
    GridFunction f = make_band_limited(2, 16, 4.0, 3, 9, 1.0);
    const double x[2] = {f.coord(5), f.coord(11)};
    CHECK(sample(f, {x, 2}).real() ==
          doctest::Approx(f.values[5 * 16 + 11].real()).epsilon(1e-14));

    GridFunction c = make_constant(3, 8, 2.0, {1.7, 0.0});
    const double y[3] = {0.123, -0.77, 0.5001};
    CHECK(sample(c, {y, 3}).real() == doctest::Approx(1.7).epsilon(1e-14));
}

TEST_CASE("sample converges at second order on a Gaussian") {
    const double x[2] = {0.337, -0.481};
    const double truth = std::exp(-pi * (x[0] * x[0] + x[1] * x[1]));
    double err[2];
    int idx = 0;
    for (int n : {64, 128}) {
        GridFunction f = make_gaussian(2, n, 8.0, {});
        err[idx++] = std::abs(sample(f, {x, 2}).real() - truth);
    }
    const double ratio = err[0] / err[1];
    CHECK(ratio > 2.5);  // O(h^2): halving h divides the error by ~4
    CHECK(ratio < 6.5);
}

TEST_CASE("rescale is exact relabeling") {
    GridFunction f = make_band_limited(2, 32, 4.0, 4, 21, 0.5);

    GridFunction id = rescale(f, 0);
    CHECK(id.box_length == f.box_length);
    CHECK(id.values == f.values);

    // indicator of a box of side a: L^1 norm scales by 2^{-d} per dyadic step
    GridFunction box = make_indicator(2, 32, 4.0, [](std::span<const double> x) {
        return std::abs(x[0]) < 0.5 && std::abs(x[1]) < 0.5;
    });
    const double r = lp_norm(rescale(box, 1), 1.0) / lp_norm(box, 1.0);
    CHECK(r == doctest::Approx(0.25).epsilon(1e-14));

    const double r2 = lp_norm(rescale(f, 1), 0.5) / lp_norm(f, 0.5);
    CHECK(r2 == doctest::Approx(0.5).epsilon(1e-12));

    GridFunction twice = rescale(rescale(f, 1), 1);
    GridFunction once = rescale(f, 2);
    CHECK(twice.box_length == once.box_length);
    CHECK(twice.values == once.values);
}

TEST_CASE("fourier multiplier: identity, projection, Gaussian oracle") {
    GridFunction f = make_band_limited(2, 32, 4.0, 5, 33, 0.2);

    GridFunction same = apply_fourier_multiplier(f, [](std::span<const double>) {
        return cplx{1.0, 0.0};
    });
    double worst = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(same.values[i] - f.values[i]));
    CHECK(worst <= 1e-12);

    GridFunction mean = apply_fourier_multiplier(f, [](std::span<const double> xi) {
        for (double c : xi)
            if (c != 0.0) return cplx{0.0, 0.0};
        return cplx{1.0, 0.0};
    });
    cplx avg{0, 0};
    for (const cplx& v : f.values) avg += v;
    avg /= static_cast<double>(f.size());
    for (std::size_t i = 0; i < f.size(); i += 97)
        CHECK(std::abs(mean.values[i] - avg) <= 1e-12);

    // m(xi) = exp(-|xi|^2) against the closed-form Gaussian convolution value
    GridFunction gauss = make_gaussian(2, 64, 16.0, {});
    GridFunction out = apply_fourier_multiplier(gauss, [](std::span<const double> xi) {
        double q = 0;
        for (double c : xi) q += c * c;
        return cplx{std::exp(-q), 0.0};
    });
    const double expect = pi / (pi + 1.0);  // integral of e^{-(pi+1)|xi|^2} over R^2
    const int idx0[2] = {32, 32};
    CHECK(out.values[out.flat_index({idx0, 2})].real() ==
          doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("Parseval under the fixed normalization") {
    for (int d : {2, 3}) {
        GridFunction f = make_band_limited(d, d == 2 ? 32 : 8, 4.0, 3, 55, 0.1);
        const double spatial = std::pow(lp_norm(f, 0.5), 2);
        CHECK(frequency_energy(f) == doctest::Approx(spatial).epsilon(1e-12));
    }
}

TEST_CASE("snapshot round trip") {
    GridFunction f = make_band_limited(2, 16, 4.0, 3, 77, 0.1);
    f.values[5] = cplx{1.25, -0.5};
    const std::string path = "test_snapshot.bin";
    write_snapshot(f, path, "unit test");
    GridFunction g = read_snapshot(path);
    CHECK(g.d == f.d);
    CHECK(g.n == f.n);
    CHECK(g.box_length == f.box_length);
    CHECK(g.values == f.values);
    CHECK(std::filesystem::exists(path + ".json"));
    std::filesystem::remove(path);
    std::filesystem::remove(path + ".json");
}

TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS_AS(make_grid(4, 16, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 20, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, 16, 0.0), std::invalid_argument);

    GridFunction f = make_grid(2, 16, 1.0);
    f.values[3] = cplx{0.0, 1e-6};
    f.real_tag = true;
    CHECK_THROWS_AS(f.validate(), std::invalid_argument);
    f.real_tag = false;
    CHECK_NOTHROW(f.validate());
    f.values.pop_back();
    CHECK_THROWS_AS(f.validate(), std::invalid_argument);
}
