#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bilab/grid.hpp"
#include "bilab/maximal.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace bilab;
constexpr double pi = std::numbers::pi;

TEST_CASE("radius grids") {
    const RadiusGrid g = RadiusGrid::global(-2, 1, 4);
    const std::vector<double> ts = g.radii();
    CHECK(ts.size() == 16);
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        CHECK(ts[i] > 0);
        CHECK(ts[i] < ts[i + 1]);
    }
    const std::vector<double> local = RadiusGrid::local_unit(8).radii();
    CHECK(local.front() == 1.0);
    CHECK(local.back() < 2.0);
    CHECK(local.size() == 8);
}

TEST_CASE("Hardy-Littlewood maximal of constants and indicators") {
    GridFunction one = make_constant(2, 16, 4.0, 1.0);
    const MaximalField m = hl_maximal(one, RadiusGrid::global(-3, -1, 2), 6);
    for (std::size_t i = 0; i < m.values.size(); i += 7)
        CHECK(m.values.values[i].real() == doctest::Approx(1.0).epsilon(1e-10));

    // full ball inside the support: the average is 1 at the center
    GridFunction ind = make_indicator(2, 64, 4.0, [](std::span<const double> x) {
        return x[0] * x[0] + x[1] * x[1] <= 0.25;
    });
    const MaximalField mi = hl_maximal(ind, RadiusGrid::global(-3, -2, 2), 8);
    const int c = 32;
    CHECK(mi.values.values[static_cast<std::size_t>(c) * 64 + c].real() ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Hardy-Littlewood far-field against the disk-overlap oracle") {
    const double a = 0.5;
    const int n = 128;
    GridFunction ind = make_indicator(2, n, 8.0, [&](std::span<const double> x) {
        return x[0] * x[0] + x[1] * x[1] <= a * a;
    });
    const RadiusGrid radii = RadiusGrid::global(0, 1, 4);
    const MaximalField m = hl_maximal(ind, radii, 8);

    const double dist = 1.5;  // probe at |x| = 3a on the axis
    const int ix = n / 2 + static_cast<int>(dist / ind.h());
    const double got = m.values.values[static_cast<std::size_t>(ix) * n + n / 2].real();

    double expect = 0;
    for (double t : radii.radii())
        expect = std::max(expect, oracles::disk_overlap(a, t, dist) / (pi * t * t));
    CHECK(got == doctest::Approx(expect).epsilon(0.05));
    CHECK(got > 0.0);
    CHECK(got < 1.0);
}

TEST_CASE("spherical maximal basics") {
    GridFunction one = make_constant(2, 16, 4.0, 1.0);
    const MaximalField s = spherical_maximal(one, RadiusGrid::global(-3, -2, 2), 8);
    for (std::size_t i = 0; i < s.values.size(); i += 5)
        CHECK(s.values.values[i].real() == doctest::Approx(2 * pi).epsilon(1e-10));

    // radial decreasing profile: the smallest radius wins at the origin
    GridFunction g = make_gaussian(2, 64, 8.0, {});
    const RadiusGrid radii = RadiusGrid::global(-2, 0, 4);
    const MaximalField sm = spherical_maximal(g, radii, 8);
    const int c = 32;
    CHECK(sm.argmax_t[static_cast<std::size_t>(c) * 64 + c] ==
          doctest::Approx(radii.radii().front()));
}

TEST_CASE("localized sup never exceeds the global sup") {
    GridFunction f = make_band_limited(2, 16, 8.0, 3, 17, 1.5);
    for (cplx& v : f.values) v = std::abs(v);
    // the global grid contains the local-unit block exactly
    const RadiusGrid local = RadiusGrid::local_unit(8);
    RadiusGrid global = RadiusGrid::global(-1, 1, 8);
    const MaximalField ml = spherical_maximal(f, local, 6);
    const MaximalField mg = spherical_maximal(f, global, 6);
    for (std::size_t i = 0; i < ml.values.size(); ++i)
        CHECK(ml.values.values[i].real() <= mg.values.values[i].real());
}

TEST_CASE("bilinear maximal of constants and the collapsed form") {
    GridFunction one = make_constant(2, 16, 8.0, 1.0);
    const MaximalField m =
        bilinear_maximal(one, one, RadiusGrid::global(-3, -2, 2), 6);
    for (std::size_t i = 0; i < m.values.size(); i += 5)
        CHECK(m.values.values[i].real() == doctest::Approx(2 * pi * pi).epsilon(1e-10));
}

TEST_CASE("strong maximal dominates the diagonal restriction exactly") {
    GridFunction f = make_band_limited(2, 16, 8.0, 3, 19, 1.2);
    GridFunction g = make_band_limited(2, 16, 8.0, 3, 20, 1.2);
    const RadiusGrid radii = RadiusGrid::global(-2, -1, 3);
    const MaximalField diag = bilinear_maximal(f, g, radii, 5);
    const GridFunction strong = strong_bilinear_maximal(f, g, radii, radii, 5);
    for (std::size_t i = 0; i < diag.values.size(); ++i)
        CHECK(strong.values[i].real() >= diag.values.values[i].real());
}

TEST_CASE("separated bumps make the strong maximal strictly larger somewhere") {
    const int n = 32;
    const double cf[2] = {0.0, 0.0}, cg[2] = {1.0, 0.0};
    GridFunction f = make_gaussian(2, n, 8.0, {cf, 2}, 0.5);
    GridFunction g = make_gaussian(2, n, 8.0, {cg, 2}, 0.5);
    const RadiusGrid radii = RadiusGrid::global(-2, 0, 4);
    const MaximalField diag = bilinear_maximal(f, g, radii, 6);
    const GridFunction strong = strong_bilinear_maximal(f, g, radii, radii, 6);
    double best_gap = 0;
    for (std::size_t i = 0; i < diag.values.size(); ++i)
        best_gap = std::max(best_gap, strong.values[i].real() -
                                          diag.values.values[i].real());
    CHECK(best_gap > 1e-3);
}

TEST_CASE("pointwise domination report") {
    const RadiusGrid radii = RadiusGrid::global(-2, 0, 3);

    GridFunction one = make_constant(2, 16, 8.0, 1.0);
    DominationReport rep = pointwise_domination_report(one, one, radii, 6);
    CHECK(rep.pass);
    // at d = 2 the chain is tight for constants: |S^3| = vol(B^2) |S^1|
    CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-12));

    GridFunction f = make_band_limited(2, 16, 8.0, 3, 23);
    GridFunction g = make_band_limited(2, 16, 8.0, 3, 24);
    for (cplx& v : f.values) v = std::abs(v);
    for (cplx& v : g.values) v = std::abs(v);
    rep = pointwise_domination_report(f, g, radii, 6);
    CHECK(rep.pass);
    CHECK(rep.max_ratio <= 1.0 + 1e-12);
    CHECK(rep.max_ratio_swapped <= 1.0 + 1e-12);

    GridFunction zero = make_constant(2, 16, 8.0, 0.0);
    rep = pointwise_domination_report(f, zero, radii, 6);
    for (const DominationRow& row : rep.rows) CHECK(row.bilinear == 0.0);
    CHECK(rep.max_ratio == 0.0);

    const std::string csv = rep.to_csv();
    CHECK(csv.rfind("index,", 0) == 0);
}

TEST_CASE("sublinearity for nonnegative inputs") {
    GridFunction f1 = make_band_limited(2, 16, 8.0, 3, 25);
    GridFunction f2 = make_band_limited(2, 16, 8.0, 3, 26);
    for (cplx& v : f1.values) v = std::abs(v);
    for (cplx& v : f2.values) v = std::abs(v);
    GridFunction sum = f1;
    for (std::size_t i = 0; i < sum.size(); ++i)
        sum.values[i] = f1.values[i] + f2.values[i];
    const RadiusGrid radii = RadiusGrid::global(-2, -1, 3);
    const MaximalField ms = spherical_maximal(sum, radii, 6);
    const MaximalField m1 = spherical_maximal(f1, radii, 6);
    const MaximalField m2 = spherical_maximal(f2, radii, 6);
    for (std::size_t i = 0; i < ms.values.size(); ++i)
        CHECK(ms.values.values[i].real() <=
              (m1.values.values[i].real() + m2.values.values[i].real()) * (1 + 1e-12));
}

TEST_CASE("enlarging the radius grid never decreases the maximal") {
    GridFunction f = make_band_limited(2, 16, 8.0, 3, 27, 1.0);
    for (cplx& v : f.values) v = std::abs(v);
    const MaximalField small = spherical_maximal(f, RadiusGrid::global(-1, -1, 4), 6);
    const MaximalField large = spherical_maximal(f, RadiusGrid::global(-2, 0, 4), 6);
    for (std::size_t i = 0; i < small.values.size(); ++i)
        CHECK(small.values.values[i].real() <= large.values.values[i].real());
}

TEST_CASE("domination chain: localized <= global <= strong") {
    GridFunction f = make_band_limited(2, 16, 8.0, 2, 28, 1.1);
    GridFunction g = make_band_limited(2, 16, 8.0, 2, 29, 1.1);
    // the local-unit block is exactly the k = 0 block of the global grid
    const RadiusGrid local = RadiusGrid::local_unit(4);
    RadiusGrid global = RadiusGrid::global(0, 1, 4);
    const MaximalField ml = bilinear_maximal(f, g, local, 5);
    const MaximalField mg = bilinear_maximal(f, g, global, 5);
    const GridFunction st = strong_bilinear_maximal(f, g, global, global, 5);
    for (std::size_t i = 0; i < ml.values.size(); ++i) {
        CHECK(ml.values.values[i].real() <= mg.values.values[i].real());
        CHECK(mg.values.values[i].real() <= st.values[i].real());
    }
}
