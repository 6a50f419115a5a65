#include "bilab/maximal.hpp"
#include "bilab/pairwise.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace bilab {

std::vector<double> RadiusGrid::radii() const {
    if (n_local < 1) throw std::invalid_argument("RadiusGrid: n_local >= 1");
    std::vector<double> out;
    const int klo = (kind == Kind::LocalUnit) ? 0 : k_min;
    const int khi = (kind == Kind::LocalUnit) ? 0 : k_max;
    for (int k = klo; k <= khi; ++k) {
        const double base = std::ldexp(1.0, k);
        for (int j = 0; j < n_local; ++j)
            out.push_back(base * (1.0 + static_cast<double>(j) / n_local));
    }
    return out;
}

RadiusGrid RadiusGrid::global(int k_min, int k_max, int n_local) {
    RadiusGrid g;
    g.kind = Kind::GlobalDyadic;
    g.k_min = k_min;
    g.k_max = k_max;
    g.n_local = n_local;
    return g;
}

RadiusGrid RadiusGrid::local_unit(int n_local) {
    RadiusGrid g;
    g.kind = Kind::LocalUnit;
    g.n_local = n_local;
    return g;
}

namespace {

// iterate all grid points, calling fn(flat_index, coords)
template <typename Fn>
void for_each_point(const GridFunction& f, Fn&& fn) {
    const int n = f.n, d = f.d;
    std::vector<int> idx(d, 0);
    std::vector<double> x(d, 0.0);
    const std::size_t total = f.size();
    for (std::size_t fl = 0; fl < total; ++fl) {
        std::size_t r = fl;
        for (int a = d - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(r % n);
            r /= n;
        }
        for (int a = 0; a < d; ++a) x[a] = f.coord(idx[a]);
        fn(fl, x);
    }
}

double ball_factor(const RealField& f, const double* x, double t,
                   const BallRule& ball) {
    const int d = f.d;
    return pairwise_sum_indexed<double>(0, ball.size(), [&](std::size_t j) {
        const double* y = ball.nodes.data() + j * static_cast<std::size_t>(d);
        double p[3];
        for (int a = 0; a < d; ++a) p[a] = x[a] - t * y[a];
        return ball.weights[j] * std::abs(f.sample(p));
    });
}

} // namespace

MaximalField hl_maximal(const GridFunction& f, const RadiusGrid& radii,
                        int order, bool normalized) {
    const RealField ff = real_field(f, true);
    const BallRule ball = ball_rule(f.d, order, /*with_slicing_weight=*/false);
    const std::vector<double> ts = radii.radii();
    const double scale = normalized ? 1.0 / ball_volume(f.d) : 1.0;

    MaximalField out;
    out.values = make_grid(f.d, f.n, f.box_length);
    out.argmax_t.assign(f.size(), ts.front());
    for_each_point(f, [&](std::size_t fl, const std::vector<double>& x) {
        double best = -1, best_t = ts.front();
        for (double t : ts) {
            const double v = ball_factor(ff, x.data(), t, ball);
            if (v > best) { best = v; best_t = t; }
        }
        out.values.values[fl] = best * scale;
        out.argmax_t[fl] = best_t;
    });
    return out;
}

MaximalField spherical_maximal(const GridFunction& f, const RadiusGrid& radii,
                               int order) {
    const RealField ff = real_field(f, true);
    const SphereRule sphere = sphere_rule(f.d, order);
    const std::vector<double> ts = radii.radii();

    MaximalField out;
    out.values = make_grid(f.d, f.n, f.box_length);
    out.argmax_t.assign(f.size(), ts.front());
    for_each_point(f, [&](std::size_t fl, const std::vector<double>& x) {
        double best = -1, best_t = ts.front();
        for (double t : ts) {
            const double v = linear_spherical_average(ff, x, t, sphere, true);
            if (v > best) { best = v; best_t = t; }
        }
        out.values.values[fl] = best;
        out.argmax_t[fl] = best_t;
    });
    return out;
}

MaximalField bilinear_maximal(const GridFunction& f, const GridFunction& g,
                              const RadiusGrid& radii, int order) {
    const RealField ff = real_field(f, true);
    const RealField gg = real_field(g, true);
    const BallRule ball = ball_rule(f.d, order, /*with_slicing_weight=*/true);
    const SphereRule sphere = sphere_rule(f.d, order);
    const std::vector<double> ts = radii.radii();

    MaximalField out;
    out.values = make_grid(f.d, f.n, f.box_length);
    out.argmax_t.assign(f.size(), ts.front());
    for_each_point(f, [&](std::size_t fl, const std::vector<double>& x) {
        double best = -1, best_t = ts.front();
        for (double t : ts) {
            const double v = sliced_bilinear_average(ff, gg, x, t, ball, sphere, true);
            if (v > best) { best = v; best_t = t; }
        }
        out.values.values[fl] = best;
        out.argmax_t[fl] = best_t;
    });
    return out;
}

GridFunction strong_bilinear_maximal(const GridFunction& f, const GridFunction& g,
                                     const RadiusGrid& radii_t,
                                     const RadiusGrid& radii_s, int order) {
    const RealField ff = real_field(f, true);
    const RealField gg = real_field(g, true);
    const BallRule ball = ball_rule(f.d, order, /*with_slicing_weight=*/true);
    const SphereRule sphere = sphere_rule(f.d, order);
    const std::vector<double> ts = radii_t.radii();
    const std::vector<double> ss = radii_s.radii();
    const int d = f.d;

    GridFunction out = make_grid(f.d, f.n, f.box_length);
    const std::size_t shell = ball.shell_size;
    for_each_point(f, [&](std::size_t fl, const std::vector<double>& x) {
        double best = -1;
        std::vector<double> outer(ball.size());
        std::vector<double> terms(ball.size());
        for (double t : ts) {
            for (std::size_t j = 0; j < ball.size(); ++j) {
                const double* y = ball.nodes.data() + j * static_cast<std::size_t>(d);
                double p[3];
                for (int a = 0; a < d; ++a) p[a] = x[a] - t * y[a];
                outer[j] = std::abs(ff.sample(p));
            }
            for (double s : ss) {
                for (std::size_t i = 0; i < ball.shell_radii.size(); ++i) {
                    const double r = ball.shell_radii[i];
                    const double sr = s * std::sqrt(std::max(0.0, 1.0 - r * r));
                    double inner = 0;
                    bool have_inner = false;
                    for (std::size_t j = i * shell; j < (i + 1) * shell; ++j) {
                        if (outer[j] == 0.0) { terms[j] = 0.0; continue; }
                        if (!have_inner) {
                            inner = linear_spherical_average(gg, x, sr, sphere, true);
                            have_inner = true;
                        }
                        terms[j] = ball.weights[j] * outer[j] * inner;
                    }
                }
                const double v = pairwise_sum<double>(terms.data(), terms.size());
                if (v > best) best = v;
            }
        }
        out.values[fl] = best;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Domination report
// ---------------------------------------------------------------------------

namespace {

struct DominationSide {
    std::vector<double> bilinear, hl, spherical, arg;
};

// One orientation of the Lemma-2.1 chain.  All three quantities are built
// from the same sampled values with the same pairwise trees, which is what
// makes the per-point inequality hold at machine precision.
DominationSide domination_side(const GridFunction& f, const GridFunction& g,
                               const RadiusGrid& radii, int order) {
    const RealField ff = real_field(f, true);
    const RealField gg = real_field(g, true);
    const int d = f.d;
    const BallRule ball_on = ball_rule(d, order, true);
    const BallRule ball_off = ball_rule(d, order, false);
    const SphereRule sphere = sphere_rule(d, order);
    const std::vector<double> ts = radii.radii();

    // reduced-radius factor sqrt(1 - r^2) is constant on each radial shell
    const std::size_t nshell = ball_on.shell_radii.size();
    const std::size_t shell = ball_on.shell_size;
    std::vector<double> reduce(nshell);
    for (std::size_t i = 0; i < nshell; ++i) {
        const double r = ball_on.shell_radii[i];
        reduce[i] = std::sqrt(std::max(0.0, 1.0 - r * r));
    }

    DominationSide side;
    side.bilinear.assign(f.size(), 0.0);
    side.hl.assign(f.size(), 0.0);
    side.spherical.assign(f.size(), 0.0);
    side.arg.assign(f.size(), ts.front());

    std::vector<double> outer(ball_on.size());
    std::vector<double> terms(ball_on.size());
    for_each_point(f, [&](std::size_t fl, const std::vector<double>& x) {
        double best_m = -1, best_mbar = -1, best_s = -1, best_t = ts.front();
        for (double t : ts) {
            for (std::size_t i = 0; i < nshell; ++i) {
                const double inner =
                    linear_spherical_average(gg, x, t * reduce[i], sphere, true);
                if (inner > best_s) best_s = inner;
                for (std::size_t j = i * shell; j < (i + 1) * shell; ++j) {
                    const double* y =
                        ball_on.nodes.data() + j * static_cast<std::size_t>(d);
                    double p[3];
                    for (int a = 0; a < d; ++a) p[a] = x[a] - t * y[a];
                    outer[j] = std::abs(ff.sample(p));
                    terms[j] = ball_on.weights[j] * outer[j] * inner;
                }
            }
            const double m = pairwise_sum<double>(terms.data(), terms.size());
            for (std::size_t j = 0; j < ball_on.size(); ++j)
                terms[j] = ball_off.weights[j] * outer[j];
            const double mbar = pairwise_sum<double>(terms.data(), terms.size());
            if (m > best_m) { best_m = m; best_t = t; }
            if (mbar > best_mbar) best_mbar = mbar;
        }
        side.bilinear[fl] = best_m;
        side.hl[fl] = best_mbar;
        side.spherical[fl] = best_s;
        side.arg[fl] = best_t;
    });
    return side;
}

double safe_ratio(double num, double den) {
    if (num == 0.0) return 0.0;
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

} // namespace

DominationReport pointwise_domination_report(const GridFunction& f,
                                             const GridFunction& g,
                                             const RadiusGrid& radii, int order) {
    DominationSide fg = domination_side(f, g, radii, order);
    DominationSide gf = domination_side(g, f, radii, order);

    DominationReport rep;
    rep.rows.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double ratio = safe_ratio(fg.bilinear[i], fg.hl[i] * fg.spherical[i]);
        const double ratio_sw = safe_ratio(gf.bilinear[i], gf.hl[i] * gf.spherical[i]);
        rep.rows.push_back({i, fg.bilinear[i], fg.hl[i], fg.spherical[i], ratio,
                            fg.arg[i]});
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        rep.max_ratio_swapped = std::max(rep.max_ratio_swapped, ratio_sw);
    }
    rep.pass = rep.max_ratio <= 1.0 + 1e-12 && rep.max_ratio_swapped <= 1.0 + 1e-12;
    return rep;
}

std::string DominationReport::to_csv() const {
    std::string out = "index,bilinear,hl_unnormalized,spherical,ratio,argmax_t\n";
    char buf[256];
    for (const DominationRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.index, r.bilinear, r.hl_unnormalized, r.spherical, r.ratio,
                      r.argmax_t);
        out += buf;
    }
    return out;
}

} // namespace bilab
