#include "bilab/bochner_riesz.hpp"
#include "bilab/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace bilab {

namespace {

constexpr double pi = std::numbers::pi;

double smooth_e(double v) { return v > 0 ? std::exp(-1.0 / v) : 0.0; }

// smooth 0 -> 1 step on [0,1] with s(v) + s(1-v) = 1
double smooth_step(double v) {
    if (v <= 0) return 0.0;
    if (v >= 1) return 1.0;
    const double a = smooth_e(v), b = smooth_e(1.0 - v);
    return a / (a + b);
}

double smooth_step_deriv(double v) {
    if (v <= 0 || v >= 1) return 0.0;
    const double a = smooth_e(v), b = smooth_e(1.0 - v);
    const double s = a + b;
    return a * b * (1.0 / (v * v) + 1.0 / ((1.0 - v) * (1.0 - v))) / (s * s);
}

} // namespace

double plus_power(double x, double alpha) {
    if (!(x > 0)) return 0.0;
    return alpha == 0.0 ? 1.0 : std::pow(x, alpha);
}

// ---------------------------------------------------------------------------
// BumpProfile
// ---------------------------------------------------------------------------

double BumpProfile::derivative(double t) const {
    if (std::abs(t) >= support_radius) return 0.0;
    if (deriv) return deriv(t);
    const double h = 1e-6;
    return ((*this)(t + h) - (*this)(t - h)) / (2 * h);
}

bool BumpProfile::in_class_cn() const {
    if (certified_cn.empty() || support_radius > 1.0 + 1e-12) return false;
    for (double c : certified_cn)
        if (c > 1.0 + 1e-9) return false;
    return true;
}

void certify(BumpProfile& p, int N) {
    p.certified_cn.assign(static_cast<std::size_t>(N) + 1, 0.0);
    const double R = p.support_radius;
    for (int n = 0; n <= N; ++n) {
        // per-order spacing balancing FD truncation against rounding noise
        const double h = (n == 0) ? R / 8192.0 : std::pow(1e-16, 1.0 / (n + 4.0));
        const double pad = 4.0 * h * (n + 1);
        const long m = std::lround(std::ceil(2.0 * (R + pad) / h)) + 1;
        std::vector<double> cur(static_cast<std::size_t>(m));
        for (long i = 0; i < m; ++i)
            cur[static_cast<std::size_t>(i)] = p(-R - pad + i * h);
        for (int level = 0; level < n; ++level) {
            std::vector<double> next(cur.size(), 0.0);
            for (std::size_t i = 2; i + 2 < cur.size(); ++i)
                next[i] = (-cur[i + 2] + 8.0 * cur[i + 1] - 8.0 * cur[i - 1] +
                           cur[i - 2]) /
                          (12.0 * h);
            cur.swap(next);
        }
        double mx = 0;
        for (double v : cur) mx = std::max(mx, std::abs(v));
        p.certified_cn[static_cast<std::size_t>(n)] = mx;
    }
}

BumpProfile normalized(const BumpProfile& p, int N) {
    BumpProfile work = p;
    certify(work, N);
    double mx = 0;
    for (double c : work.certified_cn) mx = std::max(mx, c);
    if (mx == 0.0) throw std::invalid_argument("normalized: zero profile");
    const double scale = 1.0 / (1.01 * mx);  // headroom keeps membership robust
    BumpProfile out;
    out.support_radius = p.support_radius;
    out.name = p.name + "/cn";
    auto base_eval = p.eval;
    auto base_deriv = p.deriv;
    out.eval = [base_eval, scale](double t) { return scale * base_eval(t); };
    if (base_deriv)
        out.deriv = [base_deriv, scale](double t) { return scale * base_deriv(t); };
    certify(out, N);
    return out;
}

BumpProfile bump_exp(double center, double halfwidth) {
    BumpProfile p;
    p.support_radius = std::abs(center) + halfwidth;
    p.name = "exp-bump";
    p.eval = [center, halfwidth](double t) {
        const double u = (t - center) / halfwidth;
        if (std::abs(u) >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - u * u));
    };
    p.deriv = [center, halfwidth](double t) {
        const double u = (t - center) / halfwidth;
        if (std::abs(u) >= 1.0) return 0.0;
        const double q = 1.0 - u * u;
        return std::exp(-1.0 / q) * (-2.0 * u / (q * q)) / halfwidth;
    };
    return p;
}

BumpProfile bump_poly(int k) {
    BumpProfile p;
    p.support_radius = 1.0;
    p.name = "poly-bump";
    p.eval = [k](double t) {
        const double q = 1.0 - t * t;
        return q > 0 ? std::pow(q, k) : 0.0;
    };
    p.deriv = [k](double t) {
        const double q = 1.0 - t * t;
        return q > 0 ? -2.0 * k * t * std::pow(q, k - 1) : 0.0;
    };
    return p;
}

BumpProfile bump_two_peak() {
    BumpProfile a = bump_exp(-0.4, 0.35);
    BumpProfile b = bump_exp(0.45, 0.3);
    BumpProfile p;
    p.support_radius = 0.75;
    p.name = "two-peak";
    p.eval = [a, b](double t) { return a(t) + 0.7 * b(t); };
    p.deriv = [a, b](double t) { return a.derivative(t) + 0.7 * b.derivative(t); };
    return p;
}

BumpProfile bump_tilted() {
    BumpProfile a = bump_exp(0.0, 1.0);
    BumpProfile p;
    p.support_radius = 1.0;
    p.name = "tilted";
    p.eval = [a](double t) { return a(t) * (1.0 + 0.5 * t); };
    p.deriv = [a](double t) { return a.derivative(t) * (1.0 + 0.5 * t) + 0.5 * a(t); };
    return p;
}

BumpProfile partition_profile() {
    BumpProfile p;
    p.support_radius = 1.0;
    p.name = "partition";
    p.eval = [](double t) {
        if (t <= -1.0 || t >= 1.0) return 0.0;
        return t <= 0.0 ? smooth_step(t + 1.0) : smooth_step(1.0 - t);
    };
    p.deriv = [](double t) {
        if (t <= -1.0 || t >= 1.0) return 0.0;
        return t <= 0.0 ? smooth_step_deriv(t + 1.0) : -smooth_step_deriv(1.0 - t);
    };
    return p;
}

std::vector<BumpProfile> profile_corpus(int N) {
    std::vector<BumpProfile> out;
    out.push_back(normalized(bump_exp(0.0, 1.0), N));
    out.push_back(normalized(bump_two_peak(), N));
    out.push_back(normalized(bump_poly(6), N));
    out.push_back(normalized(bump_tilted(), N));
    out.push_back(normalized(partition_profile(), N));
    return out;
}

// ---------------------------------------------------------------------------
// Dyadic decomposition of (1-t)^alpha_+
// ---------------------------------------------------------------------------

namespace {

// eta = 1 on (-inf, 1], 0 on [2, inf); chi(s) = eta(s) - eta(2s) is a dyadic
// partition piece supported in [1/2, 2] with sum_j chi(2^j s) = 1 for s > 0.
double eta_cut(double s) { return 1.0 - smooth_step(s - 1.0); }
double eta_cut_deriv(double s) { return -smooth_step_deriv(s - 1.0); }
double chi_piece(double s) { return eta_cut(s) - eta_cut(2.0 * s); }
double chi_piece_deriv(double s) { return eta_cut_deriv(s) - 2.0 * eta_cut_deriv(2.0 * s); }

} // namespace

double ProfileDecomposition::reconstruction(double t) const {
    double acc = psi0(t);
    for (int j = 2; j <= level; ++j)
        acc += std::pow(2.0, -j * alpha) * psi(std::ldexp(1.0 - t, j));
    return acc;
}

ProfileDecomposition dyadic_profile_decomposition(double alpha, int J) {
    if (!(alpha > 0)) throw std::invalid_argument("profile decomposition: alpha > 0");
    if (J < 4) throw std::invalid_argument("profile decomposition: J >= 4");

    ProfileDecomposition dec;
    dec.alpha = alpha;
    dec.level = J;

    dec.psi.support_radius = 2.0;
    dec.psi.name = "psi";
    dec.psi.eval = [alpha](double s) {
        if (s <= 0.5 || s >= 2.0) return 0.0;
        return std::pow(s, alpha) * chi_piece(s);
    };
    dec.psi.deriv = [alpha](double s) {
        if (s <= 0.5 || s >= 2.0) return 0.0;
        return alpha * std::pow(s, alpha - 1.0) * chi_piece(s) +
               std::pow(s, alpha) * chi_piece_deriv(s);
    };

    // psi0 collects the j <= 1 pieces, cut off smoothly below t = -3/4
    const BumpProfile psi_copy = dec.psi;
    dec.psi0.support_radius = 0.75;
    dec.psi0.name = "psi0";
    dec.psi0.eval = [psi_copy, alpha](double t) {
        const double theta = smooth_step(4.0 * (t + 0.75));
        if (theta == 0.0) return 0.0;
        double acc = 0;
        for (int j = -1; j <= 1; ++j)
            acc += std::pow(2.0, -j * alpha) * psi_copy(std::ldexp(1.0 - t, j));
        return theta * acc;
    };

    // residual of the truncated reconstruction over a dense sample of [0,1)
    const int samples = 20000;
    const double resolved_cut = std::ldexp(1.0, -J);
    double res_resolved = 0, res_global = 0;
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        const double target = plus_power(1.0 - t, alpha);
        const double err = std::abs(target - dec.reconstruction(t));
        res_global = std::max(res_global, err);
        if (1.0 - t >= resolved_cut) res_resolved = std::max(res_resolved, err);
    }
    dec.residual_resolved = res_resolved;
    dec.residual_global = res_global;

    const double global_bound = std::pow(2.0, -J * alpha);
    if (res_resolved > 1e-10 || res_global > global_bound * 1.0001 + 1e-12)
        throw std::logic_error("profile decomposition: residual exceeds bound");
    return dec;
}

// ---------------------------------------------------------------------------
// Bilinear pair summation
// ---------------------------------------------------------------------------

namespace {

void check_pair_budget(const GridFunction& f) {
    double pairs = 1;
    for (int a = 0; a < 2 * f.d; ++a) pairs *= f.n;
    if (pairs > 16777216.0 + 0.5)
        throw std::length_error("bilinear pair summation budget exceeded (n^{2d} > 64^4)");
}

void check_same_grid(const GridFunction& f, const GridFunction& g) {
    if (f.d != g.d || f.n != g.n || f.box_length != g.box_length)
        throw std::invalid_argument("bilinear operator: grids must match");
}

// |xi|^2 per lattice index
std::vector<double> lattice_sq(const GridFunction& f) {
    std::vector<double> sq(f.size());
    const double dxi = 1.0 / f.box_length;
    for (std::size_t i = 0; i < sq.size(); ++i) {
        std::size_t r = i;
        double q = 0;
        for (int a = 0; a < f.d; ++a) {
            const int k = static_cast<int>(r % f.n) - f.n / 2;
            r /= f.n;
            q += (k * dxi) * (k * dxi);
        }
        sq[i] = q;
    }
    return sq;
}

// frequency-pair summation with the sum frequency folded back into the
// lattice (exact at the grid points for even n)
template <typename M2>
GridFunction bilinear_pair_sum(const GridFunction& f, const GridFunction& g, M2&& m2) {
    check_same_grid(f, g);
    check_pair_budget(f);
    const int d = f.d, n = f.n;
    const std::vector<cplx> fhat = forward_transform(f);
    const std::vector<cplx> ghat = forward_transform(g);
    const std::vector<double> sq = lattice_sq(f);
    std::vector<cplx> out_hat(f.size(), cplx{0, 0});

    std::vector<int> ki(d), kj(d);
    for (std::size_t i = 0; i < fhat.size(); ++i) {
        if (fhat[i] == cplx{0, 0}) continue;
        {
            std::size_t r = i;
            for (int a = d - 1; a >= 0; --a) { ki[a] = static_cast<int>(r % n) - n / 2; r /= n; }
        }
        for (std::size_t j = 0; j < ghat.size(); ++j) {
            if (ghat[j] == cplx{0, 0}) continue;
            const double m = m2(sq[i], sq[j]);
            if (m == 0.0) continue;
            std::size_t r = j;
            for (int a = d - 1; a >= 0; --a) { kj[a] = static_cast<int>(r % n) - n / 2; r /= n; }
            std::size_t idx = 0;
            for (int a = 0; a < d; ++a) {
                int s = ki[a] + kj[a];
                if (s >= n / 2) s -= n;
                if (s < -n / 2) s += n;
                idx = idx * n + static_cast<std::size_t>(s + n / 2);
            }
            out_hat[idx] += m * fhat[i] * ghat[j];
        }
    }
    // the inner frequency sum carries its own lattice measure (1/L)^d; the
    // outer one is absorbed by the inverse transform
    const double measure = std::pow(1.0 / f.box_length, d);
    for (cplx& v : out_hat) v *= measure;
    return inverse_transform(d, n, f.box_length, out_hat);
}

} // namespace

GridFunction apply_bilinear_multiplier(const GridFunction& f, const GridFunction& g,
                                       const BilinearMultiplier& mult) {
    check_same_grid(f, g);
    check_pair_budget(f);
    const int d = f.d, n = f.n;
    const std::vector<cplx> fhat = forward_transform(f);
    const std::vector<cplx> ghat = forward_transform(g);
    std::vector<cplx> out_hat(f.size(), cplx{0, 0});
    const double dxi = 1.0 / f.box_length;

    std::vector<int> ki(d), kj(d);
    std::vector<double> xi(d), eta(d);
    for (std::size_t i = 0; i < fhat.size(); ++i) {
        {
            std::size_t r = i;
            for (int a = d - 1; a >= 0; --a) { ki[a] = static_cast<int>(r % n) - n / 2; r /= n; }
        }
        for (int a = 0; a < d; ++a) xi[a] = ki[a] * dxi;
        for (std::size_t j = 0; j < ghat.size(); ++j) {
            std::size_t r = j;
            for (int a = d - 1; a >= 0; --a) { kj[a] = static_cast<int>(r % n) - n / 2; r /= n; }
            for (int a = 0; a < d; ++a) eta[a] = kj[a] * dxi;
            const double m = mult.m(xi, eta);
            if (m == 0.0) continue;
            std::size_t idx = 0;
            for (int a = 0; a < d; ++a) {
                int s = ki[a] + kj[a];
                if (s >= n / 2) s -= n;
                if (s < -n / 2) s += n;
                idx = idx * n + static_cast<std::size_t>(s + n / 2);
            }
            out_hat[idx] += m * fhat[i] * ghat[j];
        }
    }
    const double measure = std::pow(1.0 / f.box_length, d);
    for (cplx& v : out_hat) v *= measure;
    return inverse_transform(d, n, f.box_length, out_hat);
}

// ---------------------------------------------------------------------------
// Bochner-Riesz operators
// ---------------------------------------------------------------------------

GridFunction br_linear(const GridFunction& f, double alpha, double lambda) {
    if (alpha < 0 || !(lambda > 0))
        throw std::invalid_argument("br_linear: need alpha >= 0, lambda > 0");
    const double l2 = lambda * lambda;
    return apply_fourier_multiplier(f, [alpha, l2](std::span<const double> xi) {
        double q = 0;
        for (double c : xi) q += c * c;
        return cplx{plus_power(1.0 - l2 * q, alpha), 0.0};
    });
}

GridFunction br_bilinear(const GridFunction& f, const GridFunction& g,
                         double alpha, double lambda) {
    if (alpha < 0 || !(lambda > 0))
        throw std::invalid_argument("br_bilinear: need alpha >= 0, lambda > 0");
    const double l2 = lambda * lambda;
    return bilinear_pair_sum(f, g, [alpha, l2](double a2, double b2) {
        return plus_power(1.0 - l2 * (a2 + b2), alpha);
    });
}

GridFunction br_bilinear_maximal(const GridFunction& f, const GridFunction& g,
                                 double alpha, const RadiusGrid& lambda_grid) {
    GridFunction out = make_grid(f.d, f.n, f.box_length);
    for (double lambda : lambda_grid.radii()) {
        GridFunction b = br_bilinear(f, g, alpha, lambda);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double mag = std::abs(b.values[i]);
            if (mag > out.values[i].real()) out.values[i] = cplx{mag, 0};
        }
    }
    return out;
}

GridFunction annular_bilinear(const GridFunction& f, const GridFunction& g,
                              double delta, double lambda, const BumpProfile& psi) {
    if (!(delta > 0) || delta > 0.25)
        throw std::invalid_argument("annular_bilinear: delta in (0, 1/4]");
    // psi must vanish off [1/2, 2]
    for (int i = 0; i <= 400; ++i) {
        const double u = 0.5 * i / 400.0;
        if (psi(u) != 0.0)
            throw std::invalid_argument("annular_bilinear: psi support violates [1/2,2]");
    }
    if (psi.support_radius > 2.0 + 1e-12)
        throw std::invalid_argument("annular_bilinear: psi support violates [1/2,2]");
    const double l2 = lambda * lambda;
    bool support_ok = true;
    GridFunction out = bilinear_pair_sum(f, g, [&](double a2, double b2) {
        const double arg = (1.0 - l2 * (a2 + b2)) / delta;
        const double m = psi(arg);
        if (m != 0.0) {
            const double shell = 1.0 - l2 * (a2 + b2);
            if (shell < 0.5 * delta || shell > 2.0 * delta) support_ok = false;
        }
        return m;
    });
    if (!support_ok)
        throw std::logic_error("annular_bilinear: multiplier escaped the shell");
    return out;
}

GridFunction s_op(const GridFunction& f, const BumpProfile& phi, double rho,
                  double delta, double lambda) {
    if (!phi.in_class_cn())
        throw std::invalid_argument("s_op: profile not certified in C^N(I)");
    if (!(delta > 0) || !(lambda > 0))
        throw std::invalid_argument("s_op: need delta, lambda > 0");
    const double l2 = lambda * lambda;
    return apply_fourier_multiplier(f, [&phi, rho, delta, l2](std::span<const double> xi) {
        double q = 0;
        for (double c : xi) q += c * c;
        return cplx{phi((rho - l2 * q) / delta), 0.0};
    });
}

// ---------------------------------------------------------------------------
// Square functions
// ---------------------------------------------------------------------------

namespace {

// trapezoid nodes/weights on [a, b]
void trapezoid(int nsamples, double a, double b, std::vector<double>& x,
               std::vector<double>& w) {
    x.resize(nsamples);
    w.resize(nsamples);
    const double dt = (b - a) / (nsamples - 1);
    for (int i = 0; i < nsamples; ++i) {
        x[i] = a + i * dt;
        w[i] = (i == 0 || i == nsamples - 1) ? 0.5 * dt : dt;
    }
}

} // namespace

GridFunction lo_square_function(const GridFunction& f, const BumpProfile& phi,
                                double delta, int t_samples) {
    if (!(delta > 0)) throw std::invalid_argument("lo_square_function: delta > 0");
    if (t_samples < static_cast<int>(std::ceil(8.0 / delta)))
        throw std::invalid_argument("lo_square_function: t grid under-resolved");
    const std::vector<cplx> fhat = forward_transform(f);
    const std::vector<double> sq = lattice_sq(f);
    std::vector<double> ts, ws;
    trapezoid(t_samples, 0.5, 2.0, ts, ws);

    std::vector<double> acc(f.size(), 0.0);
    std::vector<cplx> work(f.size());
    for (int i = 0; i < t_samples; ++i) {
        bool any = false;
        for (std::size_t k = 0; k < fhat.size(); ++k) {
            const double m = phi((ts[i] - sq[k]) / delta);
            work[k] = m * fhat[k];
            if (m != 0.0 && fhat[k] != cplx{0, 0}) any = true;
        }
        if (!any) continue;
        GridFunction piece = inverse_transform(f.d, f.n, f.box_length, work);
        for (std::size_t k = 0; k < acc.size(); ++k)
            acc[k] += ws[i] * std::norm(piece.values[k]);
    }
    GridFunction out = make_grid(f.d, f.n, f.box_length);
    for (std::size_t k = 0; k < acc.size(); ++k) out.values[k] = std::sqrt(acc[k]);
    return out;
}

MixedSquareResult mixed_square_function(const GridFunction& f, const BumpProfile& phi,
                                        double delta, int k_min, int k_max,
                                        int lambda_samples) {
    if (!(delta > 0) || delta > 0.25)
        throw std::invalid_argument("mixed_square_function: delta in (0, 1/4]");
    if (lambda_samples < static_cast<int>(std::ceil(8.0 / delta)))
        throw std::invalid_argument("mixed_square_function: lambda grid under-resolved");
    if (!phi.in_class_cn())
        throw std::invalid_argument("mixed_square_function: profile not certified");

    const std::vector<cplx> fhat = forward_transform(f);
    const std::vector<double> sq = lattice_sq(f);
    double sq_max = 0;
    for (double s : sq) sq_max = std::max(sq_max, s);
    std::vector<double> ls, ws;
    trapezoid(lambda_samples, 1.0, 2.0, ls, ws);
    const int rho_count = static_cast<int>(std::floor(2.0 / delta)) + 1;

    MixedSquareResult res;
    std::vector<cplx> work(f.size());
    for (int k = k_min; k <= k_max; ++k) {
        std::vector<double> acc(f.size(), 0.0);
        for (int li = 0; li < lambda_samples; ++li) {
            const double lam = std::ldexp(ls[li], k);
            const double l2 = lam * lam;
            const double smax = l2 * sq_max;
            for (int ri = 0; ri < rho_count; ++ri) {
                const double rho = ri * delta;
                if (rho - delta > smax) continue;  // empty multiplier support
                bool any = false;
                for (std::size_t i = 0; i < fhat.size(); ++i) {
                    const double m = phi((rho - l2 * sq[i]) / delta);
                    work[i] = m * fhat[i];
                    if (m != 0.0 && fhat[i] != cplx{0, 0}) any = true;
                }
                if (!any) continue;
                GridFunction piece = inverse_transform(f.d, f.n, f.box_length, work);
                for (std::size_t i = 0; i < acc.size(); ++i)
                    acc[i] += ws[li] * std::norm(piece.values[i]);
            }
        }
        GridFunction dk = make_grid(f.d, f.n, f.box_length);
        for (std::size_t i = 0; i < acc.size(); ++i) dk.values[i] = std::sqrt(acc[i]);
        res.per_k.push_back(std::move(dk));
        res.ks.push_back(k);
    }

    res.sup = make_grid(f.d, f.n, f.box_length);
    for (const GridFunction& dk : res.per_k)
        for (std::size_t i = 0; i < res.sup.size(); ++i)
            res.sup.values[i] =
                std::max(res.sup.values[i].real(), dk.values[i].real());
    return res;
}

// ---------------------------------------------------------------------------
// Kernel decay
// ---------------------------------------------------------------------------

KernelDecayReport kernel_decay_check(const BumpProfile& phi, double rho, double delta,
                                     int d, int n, double box_length,
                                     double tail_tolerance) {
    if (!(rho >= 0) || rho > 4.0 * delta)
        throw std::invalid_argument("kernel_decay_check: need 0 <= rho <= 4 delta");
    if (static_cast<int>(phi.certified_cn.size()) < d + 2 || !phi.in_class_cn())
        throw std::invalid_argument("kernel_decay_check: profile must be certified C^{d+1}");

    GridFunction probe = make_grid(d, n, box_length);
    const std::vector<double> sq = lattice_sq(probe);
    std::vector<cplx> mhat(probe.size());
    for (std::size_t i = 0; i < mhat.size(); ++i)
        mhat[i] = cplx{phi((rho - sq[i]) / delta), 0.0};
    GridFunction kernel = inverse_transform(d, n, box_length, mhat);

    KernelDecayReport rep;
    const double sd = std::sqrt(delta);
    const double scale = std::pow(delta, -0.5 * d);
    std::vector<int> idx(d, 0);
    for (std::size_t fl = 0; fl < kernel.size(); ++fl) {
        std::size_t r = fl;
        double q = 0;
        int min_j = n, max_j = -1;
        for (int a = d - 1; a >= 0; --a) {
            const int j = static_cast<int>(r % n);
            r /= n;
            min_j = std::min(min_j, j);
            max_j = std::max(max_j, j);
            const double c = kernel.coord(j);
            q += c * c;
        }
        const double mag = std::abs(kernel.values[fl]);
        const double weight = std::pow(1.0 + sd * std::sqrt(q), d + 1);
        rep.constant = std::max(rep.constant, mag * scale * weight);
        rep.peak = std::max(rep.peak, mag);
        if (min_j == 0 || max_j == n - 1)
            rep.boundary_peak = std::max(rep.boundary_peak, mag);
    }
    if (rep.boundary_peak > tail_tolerance * rep.peak)
        throw std::domain_error("kernel_decay_check: box under-resolved (tail truncated)");

    // radial symmetry: compare against the axis-swap image (exact lattice symmetry)
    if (d == 2) {
        double asym = 0;
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j) {
                const double a =
                    std::abs(kernel.values[static_cast<std::size_t>(i) * n + j]);
                const double b =
                    std::abs(kernel.values[static_cast<std::size_t>(j) * n + i]);
                asym = std::max(asym, std::abs(a - b));
            }
        rep.max_radial_asym = asym;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Multiplier partition identity
// ---------------------------------------------------------------------------

PartitionReport multiplier_partition_check(double delta, double eps, double lambda,
                                           const BumpProfile& psi, int d, int n,
                                           double box_length) {
    if (!(delta > 0) || delta > 0.25)
        throw std::invalid_argument("partition check: delta in (0, 1/4]");
    const BumpProfile pou = partition_profile();

    PartitionReport rep;
    // exact integer-shift property on a dense sample
    for (int i = 0; i <= 5000; ++i) {
        const double t = -2.0 + 4.0 * i / 5000.0;
        double s = 0;
        for (int k = -3; k <= 3; ++k) s += pou(t + k);
        rep.pou_defect = std::max(rep.pou_defect, std::abs(s - 1.0));
    }
    if (rep.pou_defect > 1e-12)
        throw std::logic_error("partition check: partition-of-unity property violated");

    const double tilde = std::pow(delta, 1.0 + eps);
    const long rho_lo = 0;
    const long rho_hi = static_cast<long>(std::floor(2.0 / tilde));
    const long vr_lo = static_cast<long>(std::ceil((1.0 - 4.0 * delta) / tilde));
    const long vr_hi = static_cast<long>(std::floor((1.0 + 2.0 * delta) / tilde));
    rep.cell_bound = static_cast<long>((6.0 * delta / tilde + 2.0) *
                                       (2.0 / tilde + 2.0));

    GridFunction probe = make_grid(d, n, box_length);
    const std::vector<double> sq = lattice_sq(probe);
    const double l2 = lambda * lambda;

    std::set<std::pair<long, long>> active;
    for (std::size_t i = 0; i < sq.size(); ++i) {
        const double a = l2 * sq[i];
        for (std::size_t j = 0; j < sq.size(); ++j) {
            const double b = l2 * sq[j];
            const double lhs = psi((1.0 - a - b) / delta);
            // phi((rho - a)/tilde) fires only for rho/tilde within 1 of a/tilde
            double rhs = 0;
            int cells = 0;
            const long r0 = static_cast<long>(std::floor(a / tilde)) - 1;
            for (long ri = std::max(rho_lo, r0); ri <= std::min(rho_hi, r0 + 3); ++ri) {
                const double rho = ri * tilde;
                const double pa = pou((rho - a) / tilde);
                if (pa == 0.0) continue;
                const long v0 = static_cast<long>(std::floor((rho + b) / tilde)) - 1;
                for (long vi = std::max(vr_lo, v0); vi <= std::min(vr_hi, v0 + 3); ++vi) {
                    const double vrho = vi * tilde;
                    const double pb = pou((vrho - rho - b) / tilde);
                    if (pb == 0.0) continue;
                    const double term = lhs * pa * pb;
                    rhs += term;
                    if (term != 0.0) {
                        ++cells;
                        active.insert({vi, ri});
                    }
                }
            }
            rep.max_error = std::max(rep.max_error, std::abs(lhs - rhs));
            rep.max_cells_per_pair = std::max(rep.max_cells_per_pair, cells);
        }
    }
    rep.active_cells = static_cast<long>(active.size());
    return rep;
}

// ---------------------------------------------------------------------------
// Fundamental-theorem bridge
// ---------------------------------------------------------------------------

FtcBridgeReport ftc_bridge_check(const GridFunction& f, const GridFunction& g,
                                 double delta, const BumpProfile& psi, int k,
                                 int lambda_samples, double slack) {
    std::vector<double> ts, ws;
    trapezoid(lambda_samples, 1.0, 2.0, ts, ws);
    const std::size_t total = f.size();
    std::vector<double> lhs(total, 0.0), rhs(total, 0.0);

    for (int i = 0; i < lambda_samples; ++i) {
        const double lam = std::ldexp(ts[i], k);
        const double l2 = lam * lam;
        GridFunction b = bilinear_pair_sum(f, g, [&](double a2, double b2) {
            return psi((1.0 - l2 * (a2 + b2)) / delta);
        });
        // d/dt of psi((1 - (2^k t)^2 s)/delta) = psi'(arg) (-2 4^k t s / delta)
        const double t = ts[i];
        const double fourk = std::ldexp(1.0, 2 * k);
        GridFunction db = bilinear_pair_sum(f, g, [&](double a2, double b2) {
            const double s = a2 + b2;
            const double arg = (1.0 - l2 * s) / delta;
            if (std::abs(arg) >= 2.0) return 0.0;
            return psi.derivative(arg) * (-2.0 * fourk * t * s / delta);
        });
        for (std::size_t p = 0; p < total; ++p) {
            const double mag = std::abs(b.values[p]);
            lhs[p] = std::max(lhs[p], mag);
            rhs[p] += ws[i] * (mag + std::abs(db.values[p]));
        }
    }
    FtcBridgeReport rep;
    for (std::size_t p = 0; p < total; ++p) {
        if (lhs[p] == 0.0) continue;
        rep.max_ratio = std::max(rep.max_ratio, lhs[p] / rhs[p]);
    }
    rep.pass = rep.max_ratio <= 1.0 + slack;
    return rep;
}

} // namespace bilab
