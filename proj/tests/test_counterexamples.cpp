#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bilab/counterexamples.hpp"
#include "bilab/grid.hpp"

#include <cmath>
#include <numbers>

using namespace bilab;
constexpr double pi = std::numbers::pi;

TEST_CASE("knapp family geometry") {
    const FamilyGrid grid{2, 512, 4.0};
    const double delta = 0.125;
    const FamilyPair fam = knapp_family(delta, grid, 0.15);

    CHECK(fam.meta.c1 > 3.0 * fam.meta.c2);
    CHECK(lp_norm(fam.f, 1.0) ==
          doctest::Approx(pi * delta * delta).epsilon(12.0 * fam.f.h() / delta));
    for (const cplx& v : fam.f.values)
        CHECK((v.real() == 0.0 || v.real() == 1.0));
    CHECK(!fam.probes.empty());
    for (const auto& p : fam.probes) {
        const double r = std::hypot(p[0], p[1]);
        CHECK(r >= 1.0 / std::sqrt(2.0) - 1e-12);
        CHECK(r <= 1.0 / std::sqrt(2.0) + 0.15 + 1e-12);
    }
}

TEST_CASE("under-resolved delta is rejected") {
    const FamilyGrid grid{2, 64, 4.0};  // h = 1/16
    CHECK_THROWS_AS(knapp_family(1.0 / 8, grid, 0.15), std::invalid_argument);
    CHECK_THROWS_AS(annulus_family(1.0 / 8, 0.15, grid), std::invalid_argument);
}

TEST_CASE("annulus family geometry") {
    const FamilyGrid grid{2, 512, 4.0};
    const double delta = 1.0 / 16;
    const FamilyPair fam = annulus_family(delta, 0.15, grid);
    CHECK(fam.meta.c1 > fam.meta.c2 + 1.0);
    CHECK(fam.meta.c1 < std::pow(2.0, -1.5) / 0.15);
    // thin annulus area: width 4 delta at radius 1/sqrt2
    const double expect = 4.0 * delta * 2.0 * pi / std::sqrt(2.0);
    CHECK(lp_norm(fam.f, 1.0) == doctest::Approx(expect).epsilon(0.1));
}

TEST_CASE("probe statistics are positive and scale with delta") {
    const FamilyGrid grid{2, 1024, 4.0};
    ScanConfig config;
    config.grid = grid;
    config.eps0 = 0.15;
    config.eps_annulus = 0.15;

    const std::vector<double> deltas = {1.0 / 16, 1.0 / 32};
    const std::vector<ScanRecord> knapp = run_scan("knapp", deltas, config);
    REQUIRE(knapp.size() == 2);
    CHECK(knapp[0].ratio > 0.0);
    CHECK(knapp[1].ratio > 0.0);
    CHECK(knapp[1].ratio < knapp[0].ratio);  // monotone in delta
    const double drop = knapp[1].ratio / knapp[0].ratio;
    CHECK(drop == doctest::Approx(1.0 / 8).epsilon(0.45));  // ~ 2^{-(2d-1)}

    const std::vector<ScanRecord> ann = run_scan("annulus", deltas, config);
    CHECK(ann[0].ratio > 0.0);
    const double drop_a = ann[1].ratio / ann[0].ratio;
    CHECK(drop_a == doctest::Approx(0.5).epsilon(0.35));
}

TEST_CASE("family translation moves the probe statistic covariantly") {
    const FamilyGrid grid{2, 512, 4.0};
    const double delta = 1.0 / 16;
    const FamilyPair fam = knapp_family(delta, grid, 0.15);
    const int n = grid.n;
    const int shift[2] = {7, -4};

    auto roll = [&](const GridFunction& src) {
        GridFunction dst = src;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int i2 = ((i + shift[0]) % n + n) % n;
                const int j2 = ((j + shift[1]) % n + n) % n;
                dst.values[static_cast<std::size_t>(i2) * n + j2] =
                    src.values[static_cast<std::size_t>(i) * n + j];
            }
        return dst;
    };
    const RealField f = real_field(fam.f, true);
    const RealField g = real_field(fam.g, true);
    const RealField f2 = real_field(roll(fam.f), true);
    const RealField g2 = real_field(roll(fam.g), true);

    const double h = fam.f.h();
    const double x[2] = {fam.probes[0][0], fam.probes[0][1]};
    const double x2[2] = {x[0] + shift[0] * h, x[1] + shift[1] * h};
    const double a = localized_bilinear_sup_at(f, g, {x, 2}, delta / 6.0, 64);
    const double b = localized_bilinear_sup_at(f2, g2, {x2, 2}, delta / 6.0, 64);
    CHECK(a > 0.0);
    CHECK(b == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("fitted slopes are stable under grid doubling") {
    ScanConfig config;
    config.eps0 = 0.15;
    const std::vector<double> deltas = {1.0 / 8, 1.0 / 16, 1.0 / 32};
    double slopes[2];
    int i = 0;
    for (int n : {512, 1024}) {
        config.grid = {2, n, 4.0};
        const std::vector<ScanRecord> recs = run_scan("knapp", deltas, config);
        slopes[i++] = fit_scaling_exponent(recs).slope;
    }
    CHECK(std::abs(slopes[0] - slopes[1]) < 0.05);
}

TEST_CASE("scaling family identities") {
    GridFunction f = make_band_limited(2, 16, 2.0, 2, 51, 2.0);
    GridFunction g = make_band_limited(2, 16, 2.0, 2, 52, 2.0);

    const int zero = 0;
    auto same = scaling_family(f, g, {&zero, 1});
    CHECK(same[0].first.values == f.values);
    CHECK(same[0].first.box_length == f.box_length);

    ScanConfig config;
    config.grid = {2, 16, 2.0};
    config.seed = 51;
    config.scaling_order = 5;
    config.scaling_radius_samples = 2;

    SUBCASE("Hoelder exponents give R-independent ratios") {
        config.exponents = {2, 0.5, 0.5, 1.0, {}, {}, {}};
        const std::vector<double> rs = {1, 2, 4};
        const std::vector<ScanRecord> recs = run_scan("scaling", rs, config);
        REQUIRE(recs.size() == 3);
        for (const ScanRecord& r : recs)
            CHECK(r.ratio == doctest::Approx(recs[0].ratio).epsilon(1e-10));
    }

    SUBCASE("off-Hoelder slope is forced by the norm scaling laws") {
        config.exponents = {2, 0.5, 0.5, 0.5, {}, {}, {}};
        const std::vector<double> rs = {1, 2, 4};
        const std::vector<ScanRecord> recs = run_scan("scaling", rs, config);
        const double want = 2.0 * (0.5 - 1.0);  // d (1/r - 1/p - 1/q)
        for (std::size_t i = 1; i < recs.size(); ++i) {
            const double slope = std::log2(recs[i].ratio / recs[i - 1].ratio);
            CHECK(slope == doctest::Approx(want).epsilon(1e-6));
        }
    }
}

TEST_CASE("run_scan edge cases") {
    ScanConfig config;
    config.grid = {2, 512, 4.0};
    CHECK(run_scan("knapp", {}, config).empty());
    const std::vector<double> bad = {0.5};  // > eps0
    CHECK_THROWS_AS(run_scan("knapp", bad, config), std::invalid_argument);
    CHECK_THROWS_AS(run_scan("mystery", std::vector<double>{0.1}, config),
                    std::invalid_argument);
}

TEST_CASE("slope fitting") {
    std::vector<ScanRecord> recs(4);
    for (int i = 0; i < 4; ++i) {
        recs[i].parameter = std::pow(2.0, -i);
        recs[i].ratio = std::pow(recs[i].parameter, 3.0);
    }
    const SlopeFit fit = fit_scaling_exponent(recs);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<ScanRecord> two(recs.begin(), recs.begin() + 2);
    CHECK_THROWS_AS(fit_scaling_exponent(two), std::invalid_argument);
    recs[1].ratio = 0.0;
    CHECK_THROWS_AS(fit_scaling_exponent(recs), std::invalid_argument);
}

TEST_CASE("scan serialization carries the fit") {
    std::vector<ScanRecord> recs(3);
    for (int i = 0; i < 3; ++i) {
        recs[i].parameter = std::pow(2.0, -i);
        recs[i].ratio = std::pow(recs[i].parameter, 2.0);
        recs[i].meta.family = "synthetic";
        recs[i].meta.d = 2;
    }
    const SlopeFit fit = fit_scaling_exponent(recs);
    const std::string csv = scan_to_csv(recs, &fit);
    CHECK(csv.rfind("family,", 0) == 0);
    CHECK(csv.find("# slope=") != std::string::npos);
    const std::string json = scan_to_json(recs, &fit);
    CHECK(json.find("\"slope\"") != std::string::npos);
    CHECK(json.find("\"ci95\"") != std::string::npos);
}
