#include "bilab/counterexamples.hpp"
#include "bilab/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bilab {

namespace {

constexpr double pi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Ring-windowed d = 2 evaluation.  The indicator families concentrate on
// delta-size sets; a rule dense enough to resolve them has ~1/delta^2 nodes,
// nearly all of which sample exact zeros.  Rings (fixed radius, uniform
// azimuth) let us visit only nodes whose distance to the support permits a
// nonzero sample, which turns the probe statistic into an O(delta-cap) sum.
// ---------------------------------------------------------------------------

struct RingRule {
    std::vector<double> radius;    // sin(phi_i)
    std::vector<double> radial_w;  // glw_i * r_i * cos(phi_i)   (d = 2, weight 1)
    int azimuth = 0;               // uniform nodes per ring
};

RingRule make_ring_rule(int nphi, int azimuth) {
    std::vector<double> x, w;
    gauss_legendre(nphi, 0.0, 0.5 * pi, x, w);
    RingRule r;
    r.azimuth = azimuth;
    r.radius.resize(nphi);
    r.radial_w.resize(nphi);
    for (int i = 0; i < nphi; ++i) {
        const double s = std::sin(x[i]);
        r.radius[i] = s;
        r.radial_w[i] = w[i] * s * std::cos(x[i]);
    }
    return r;
}

struct Bounds {
    double in = 0;   // sampling below this distance gives exact zeros
    double out = 0;  // ... and above this one
};

// Euclidean support bounds of the nonzero cells, with one interpolation
// stencil of margin so that samples outside [in, out] are exact zeros.
Bounds support_bounds(const RealField& f) {
    const double hs = f.h();
    double rmin = std::numeric_limits<double>::infinity();
    double rmax = 0;
    bool any = false;
    for (std::size_t fl = 0; fl < f.v.size(); ++fl) {
        if (f.v[fl] == 0.0) continue;
        any = true;
        std::size_t rest = fl;
        double q = 0;
        for (int a = f.d - 1; a >= 0; --a) {
            const int j = static_cast<int>(rest % f.n);
            rest /= f.n;
            const double c = (j - f.n / 2) * hs;
            q += c * c;
        }
        const double rr = std::sqrt(q);
        rmin = std::min(rmin, rr);
        rmax = std::max(rmax, rr);
    }
    if (!any) return {0.0, 0.0};
    const double margin = std::sqrt(2.0) * hs * 1.000001;
    return {std::max(0.0, rmin - margin), rmax + margin};
}

// Raw sum of |field| over the ring nodes (radius s, uniform azimuth) whose
// distance to the origin-centered support annulus can be nonzero.
double circle_windowed_raw_sum(const RealField& field, const double* x, double s,
                               int m, const Bounds& b) {
    if (b.out <= b.in) return 0.0;
    const double xr = std::hypot(x[0], x[1]);
    const double base = xr * xr + s * s;
    const double denom = 2.0 * s * xr;
    const double dtheta = 2.0 * pi / m;

    auto eval = [&](long long i) {
        const double th = dtheta * static_cast<double>(i);
        double p[2] = {x[0] - s * std::cos(th), x[1] - s * std::sin(th)};
        return std::abs(field.sample(p));
    };

    if (denom < 1e-14) {  // concentric circles: all or nothing
        const double dist = std::sqrt(base);
        if (dist < b.in || dist > b.out) return 0.0;
        double acc = 0;
        for (int i = 0; i < m; ++i) acc += eval(i);
        return acc;
    }
    const double c_lo = (base - b.out * b.out) / denom;  // cos >= c_lo
    const double c_hi = (base - b.in * b.in) / denom;    // cos <= c_hi
    if (c_lo > 1.0 || c_hi < -1.0) return 0.0;
    const double a_lo = std::acos(std::clamp(c_lo, -1.0, 1.0));
    const double a_hi = std::acos(std::clamp(c_hi, -1.0, 1.0));
    const double thx = std::atan2(x[1], x[0]);

    // |theta - thx| in [a_hi, a_lo]; gaps are exact-zero regions so merging
    // windows only adds zero samples
    std::vector<long long> idx;
    auto push_range = [&](double lo, double hi) {
        const long long ilo = static_cast<long long>(std::ceil(lo / dtheta)) - 1;
        const long long ihi = static_cast<long long>(std::floor(hi / dtheta)) + 1;
        for (long long i = ilo; i <= ihi; ++i) idx.push_back(((i % m) + m) % m);
    };
    if (a_hi <= 2.0 * dtheta) {
        push_range(thx - a_lo, thx + a_lo);
    } else if (a_lo >= pi - 2.0 * dtheta) {
        push_range(thx + a_hi, thx + 2.0 * pi - a_hi);
    } else {
        push_range(thx + a_hi, thx + a_lo);
        push_range(thx - a_lo, thx - a_hi);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.size() >= static_cast<std::size_t>(m)) {
        double acc = 0;
        for (int i = 0; i < m; ++i) acc += eval(i);
        return acc;
    }
    double acc = 0;
    for (long long i : idx) acc += eval(i);
    return acc;
}

} // namespace

double localized_bilinear_sup_at(const RealField& f, const RealField& g,
                                 std::span<const double> x, double resolve,
                                 int t_samples) {
    if (f.d != 2) throw std::invalid_argument("windowed statistic: d = 2 only");
    const int nphi = std::max(32, static_cast<int>(std::ceil(0.5 * pi / resolve)));
    const int m = std::max(64, static_cast<int>(std::ceil(2.0 * pi / resolve)));
    const RingRule rule = make_ring_rule(nphi, m);
    const Bounds bf = support_bounds(f);
    const Bounds bg = support_bounds(g);
    const double ring_az_w = 2.0 * pi / rule.azimuth;
    const double inner_az_w = 2.0 * pi / m;
    const double xr = std::hypot(x[0], x[1]);

    double best = 0;
    for (int j = 0; j < t_samples; ++j) {
        const double t = 1.0 + static_cast<double>(j) / t_samples;
        double acc = 0;
        for (int i = 0; i < nphi; ++i) {
            const double tr = t * rule.radius[i];
            // ring prefilter: distance from x to the ring spans [|xr-tr|, xr+tr]
            if (xr + tr < bf.in || std::abs(xr - tr) > bf.out) continue;
            const double sf =
                circle_windowed_raw_sum(f, x.data(), tr, rule.azimuth, bf);
            if (sf == 0.0) continue;
            const double sred =
                t * std::sqrt(std::max(0.0, 1.0 - rule.radius[i] * rule.radius[i]));
            const double inner =
                circle_windowed_raw_sum(g, x.data(), sred, m, bg) * inner_az_w;
            if (inner == 0.0) continue;
            acc += rule.radial_w[i] * ring_az_w * sf * inner;
        }
        best = std::max(best, acc);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

namespace {

void require_resolvable(double delta, const FamilyGrid& grid) {
    const double h = grid.box_length / grid.n;
    if (delta < 4.0 * h)
        throw std::invalid_argument("family: delta under-resolved (need delta >= 4h)");
}

GridFunction ball_indicator(const FamilyGrid& grid, double radius) {
    return make_indicator(grid.d, grid.n, grid.box_length,
                          [&](std::span<const double> x) {
                              double q = 0;
                              for (double c : x) q += c * c;
                              return q <= radius * radius;
                          });
}

GridFunction annulus_indicator(const FamilyGrid& grid, double r_in, double r_out) {
    return make_indicator(grid.d, grid.n, grid.box_length,
                          [&](std::span<const double> x) {
                              double q = 0;
                              for (double c : x) q += c * c;
                              return q >= r_in * r_in && q <= r_out * r_out;
                          });
}

} // namespace

FamilyPair knapp_family(double delta, const FamilyGrid& grid, double eps0) {
    require_resolvable(delta, grid);
    if (!(delta > 0) || delta > eps0)
        throw std::invalid_argument("knapp_family: need 0 < delta <= eps0");
    // c2 bounds the drift of sqrt(1-|y|^2) over the f-cap; c1 > 3 c2 makes the
    // g-ball swallow the displaced sphere points.
    const double c2 = 1.2;
    const double c1 = 4.0;

    FamilyPair fam;
    fam.f = ball_indicator(grid, delta);
    fam.g = ball_indicator(grid, c1 * delta);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double probe_radii[2] = {inv_sqrt2 + 0.25 * eps0, inv_sqrt2 + 0.75 * eps0};
    const double probe_angles[4] = {0.3, 1.7, 3.0, 4.6};
    for (double r : probe_radii)
        for (double a : probe_angles) {
            if (grid.d == 2)
                fam.probes.push_back({r * std::cos(a), r * std::sin(a)});
            else
                fam.probes.push_back(
                    {r * std::cos(a), r * std::sin(a) * 0.8, r * std::sin(a) * 0.6});
        }
    fam.meta = {"knapp", grid.d, delta, c1, c2, eps0, grid.n, grid.box_length};
    return fam;
}

FamilyPair annulus_family(double delta, double eps, const FamilyGrid& grid) {
    require_resolvable(delta, grid);
    if (!(delta > 0) || delta > eps)
        throw std::invalid_argument("annulus_family: need 0 < delta <= eps");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double c2 = 1.0;  // sqrt(1-|y|^2) in [1/sqrt2, 1/sqrt2 + delta] on the band
    // midway between the lower chain bound c2 + 1 and the cap 2^{-3/2}/eps
    const double cap = std::pow(2.0, -1.5) / eps;
    const double c1 = 0.5 * ((c2 + 1.0) + cap);
    if (!(c1 > c2 + 1.0) || !(c1 < cap))
        throw std::invalid_argument("annulus_family: c1 outside (1, 2^{-3/2}/eps)");

    FamilyPair fam;
    fam.f = annulus_indicator(grid, inv_sqrt2 - 2.0 * delta, inv_sqrt2 + 2.0 * delta);
    fam.g = annulus_indicator(grid, inv_sqrt2 - c1 * delta, inv_sqrt2 + c1 * delta);
    fam.probes.push_back(std::vector<double>(grid.d, 0.0));
    std::vector<double> p1(grid.d, 0.0), p2(grid.d, 0.0);
    p1[0] = 0.5 * delta;
    p2[grid.d - 1] = -0.5 * delta;
    fam.probes.push_back(p1);
    fam.probes.push_back(p2);
    fam.meta = {"annulus", grid.d, delta, c1, c2, eps, grid.n, grid.box_length};
    return fam;
}

std::vector<std::pair<GridFunction, GridFunction>> scaling_family(
    const GridFunction& f, const GridFunction& g, std::span<const int> m_list) {
    std::vector<std::pair<GridFunction, GridFunction>> out;
    out.reserve(m_list.size());
    for (int m : m_list)
        out.emplace_back(rescale(f, -m), rescale(g, -m));  // f(x / 2^m)
    return out;
}

// ---------------------------------------------------------------------------
// Scan driver
// ---------------------------------------------------------------------------

namespace {

ScanRecord probe_statistic_record(const FamilyPair& fam, double delta,
                                  const ScanConfig& config, int t_samples) {
    const RealField ff = real_field(fam.f, true);
    const RealField gg = real_field(fam.g, true);
    double stat = std::numeric_limits<double>::infinity();
    for (const auto& probe : fam.probes) {
        const double v =
            localized_bilinear_sup_at(ff, gg, probe, delta / 6.0, t_samples);
        stat = std::min(stat, v);
    }
    ScanRecord rec;
    rec.parameter = delta;
    rec.ratio = stat;
    rec.meta = fam.meta;
    rec.meta.delta = 0;  // scan-level meta: the parameter carries delta
    rec.exponents = config.exponents;
    rec.norm_f = lp_norm(fam.f, 1.0);
    rec.norm_g = lp_norm(fam.g, 1.0);
    return rec;
}

ScanRecord scaling_record(const GridFunction& fr, const GridFunction& gr, int m,
                          const ScanConfig& config) {
    const ExponentPoint& e = config.exponents;
    RadiusGrid radii = RadiusGrid::global(m, m + 1, config.scaling_radius_samples);
    MaximalField mf = bilinear_maximal(fr, gr, radii, config.scaling_order);
    const double num = lp_norm(mf.values, e.ur);
    const double nf = lp_norm(fr, e.up);
    const double ng = lp_norm(gr, e.uq);
    ScanRecord rec;
    rec.parameter = std::ldexp(1.0, m);
    rec.ratio = num / (nf * ng);
    rec.meta = {"scaling", fr.d, 0, 0, 0, 0, fr.n, config.grid.box_length};
    rec.exponents = e;
    rec.norm_f = nf;
    rec.norm_g = ng;
    return rec;
}

} // namespace

std::vector<ScanRecord> run_scan(const std::string& family,
                                 std::span<const double> params,
                                 const ScanConfig& config) {
    std::vector<ScanRecord> out;
    if (params.empty()) return out;

    if (family == "scaling") {
        GridFunction f = make_band_limited(config.grid.d, config.grid.n,
                                           config.grid.box_length,
                                           config.scaling_seed_modes, config.seed, 2.0);
        GridFunction g = make_band_limited(config.grid.d, config.grid.n,
                                           config.grid.box_length,
                                           config.scaling_seed_modes,
                                           config.seed + 1, 2.0);
        for (double p : params) {
            const double m_real = std::log2(p);
            const int m = static_cast<int>(std::lround(m_real));
            if (std::abs(m_real - m) > 1e-9)
                throw std::invalid_argument("scaling scan: parameters must be dyadic");
            auto pair = scaling_family(f, g, std::span<const int>(&m, 1));
            out.push_back(scaling_record(pair[0].first, pair[0].second, m, config));
        }
        return out;
    }

    if (config.grid.d != 2)
        throw std::invalid_argument("probe scans support d = 2 only");
    double dmin = params[0];
    for (double p : params) dmin = std::min(dmin, p);
    const int t_samples = config.t_samples > 0
                              ? config.t_samples
                              : std::max(64, static_cast<int>(std::ceil(4.0 / dmin)));

    for (double delta : params) {
        FamilyPair fam;
        if (family == "knapp")
            fam = knapp_family(delta, config.grid, config.eps0);
        else if (family == "annulus")
            fam = annulus_family(delta, config.eps_annulus, config.grid);
        else
            throw std::invalid_argument("unknown scan family: " + family);
        out.push_back(probe_statistic_record(fam, delta, config, t_samples));
    }
    return out;
}

SlopeFit fit_scaling_exponent(std::span<const ScanRecord> records) {
    if (records.size() < 3)
        throw std::invalid_argument("fit_scaling_exponent: need >= 3 records");
    const std::size_t n = records.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(records[i].ratio > 0))
            throw std::invalid_argument("fit_scaling_exponent: nonpositive ratio");
        lx[i] = std::log(records[i].parameter);
        ly[i] = std::log(records[i].ratio);
    }
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += lx[i]; sy += ly[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += e * e;
    }
    fit.r_squared = (syy > 0) ? 1.0 - ss_res / syy : 1.0;
    fit.slope_stderr = (n > 2) ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    return fit;
}

std::string scan_to_csv(std::span<const ScanRecord> records, const SlopeFit* fit) {
    std::string out = "family,d,param,statistic,norm_p,norm_q\n";
    char buf[320];
    for (const ScanRecord& r : records) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%.17g,%.17g,%.17g,%.17g\n",
                      r.meta.family.c_str(), r.meta.d, r.parameter, r.ratio,
                      r.norm_f, r.norm_g);
        out += buf;
    }
    if (fit) {
        std::snprintf(buf, sizeof(buf),
                      "# slope=%.17g stderr=%.17g intercept=%.17g r_squared=%.17g\n",
                      fit->slope, fit->slope_stderr, fit->intercept, fit->r_squared);
        out += buf;
    }
    return out;
}

std::string scan_to_json(std::span<const ScanRecord> records, const SlopeFit* fit) {
    nlohmann::json j;
    j["records"] = nlohmann::json::array();
    for (const ScanRecord& r : records) {
        nlohmann::json rec;
        rec["family"] = r.meta.family;
        rec["d"] = r.meta.d;
        rec["n"] = r.meta.n;
        rec["box_length"] = r.meta.box_length;
        rec["parameter"] = r.parameter;
        rec["statistic"] = r.ratio;
        rec["norm_p"] = r.norm_f;
        rec["norm_q"] = r.norm_g;
        rec["c1"] = r.meta.c1;
        rec["c2"] = r.meta.c2;
        j["records"].push_back(rec);
    }
    if (fit) {
        j["fit"]["slope"] = fit->slope;
        j["fit"]["intercept"] = fit->intercept;
        j["fit"]["r_squared"] = fit->r_squared;
        j["fit"]["slope_stderr"] = fit->slope_stderr;
        j["fit"]["ci95"] = {fit->slope - 2 * fit->slope_stderr,
                            fit->slope + 2 * fit->slope_stderr};
    }
    return j.dump(2);
}

} // namespace bilab
