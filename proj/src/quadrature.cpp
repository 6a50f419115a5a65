#include "bilab/quadrature.hpp"
#include "bilab/pairwise.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace bilab {

namespace {

constexpr double pi = std::numbers::pi;

struct FixedRule {
    std::vector<double> x, w;
};

// Gauss-Jacobi nodes/weights on [-1,1] for the weight (1-u)^a (1+u)^a.
FixedRule gauss_jacobi_sym(int npts, double a) {
    gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(
        gsl_integration_fixed_jacobi, static_cast<std::size_t>(npts), -1.0, 1.0, a, a);
    if (!ws) throw std::runtime_error("gsl fixed jacobi alloc failed");
    FixedRule r;
    r.x.assign(gsl_integration_fixed_nodes(ws),
               gsl_integration_fixed_nodes(ws) + npts);
    r.w.assign(gsl_integration_fixed_weights(ws),
               gsl_integration_fixed_weights(ws) + npts);
    gsl_integration_fixed_free(ws);
    return r;
}

FixedRule gauss_legendre_rule(int npts, double a, double b) {
    gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(
        gsl_integration_fixed_legendre, static_cast<std::size_t>(npts), a, b, 0.0, 0.0);
    if (!ws) throw std::runtime_error("gsl fixed legendre alloc failed");
    FixedRule r;
    r.x.assign(gsl_integration_fixed_nodes(ws),
               gsl_integration_fixed_nodes(ws) + npts);
    r.w.assign(gsl_integration_fixed_weights(ws),
               gsl_integration_fixed_weights(ws) + npts);
    gsl_integration_fixed_free(ws);
    return r;
}

SphereRule circle_rule(int order) {
    SphereRule r;
    r.k = 2;
    const int m = 4 * order + 2;
    r.azimuth_count = m;
    r.nodes.resize(2 * static_cast<std::size_t>(m));
    r.weights.assign(m, 2.0 * pi / m);
    for (int i = 0; i < m; ++i) {
        const double th = 2.0 * pi * i / m;
        r.nodes[2 * i] = std::cos(th);
        r.nodes[2 * i + 1] = std::sin(th);
    }
    return r;
}

} // namespace

void gauss_legendre(int npts, double a, double b,
                    std::vector<double>& x, std::vector<double>& w) {
    FixedRule r = gauss_legendre_rule(npts, a, b);
    x = std::move(r.x);
    w = std::move(r.w);
}

double sphere_area(int k) {
    return 2.0 * std::pow(pi, k / 2.0) / std::tgamma(k / 2.0);
}

double ball_volume(int d) {
    return std::pow(pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

namespace {

// recurse: S^{k-1} = Jacobi((k-3)/2) x S^{k-2}; any k >= 2
SphereRule sphere_rule_any(int k, int order) {
    if (k == 2) return circle_rule(order);
    SphereRule base = sphere_rule_any(k - 1, order);
    // 4x the count polynomial exactness needs: integrating sampled grid
    // functions (piecewise-multilinear, kinked) rewards the extra density
    const int npolar = std::max(4, 4 * order);
    FixedRule polar = gauss_jacobi_sym(npolar, 0.5 * (k - 3));

    SphereRule r;
    r.k = k;
    r.nodes.reserve(static_cast<std::size_t>(npolar) * base.size() * k);
    r.weights.reserve(static_cast<std::size_t>(npolar) * base.size());
    for (int i = 0; i < npolar; ++i) {
        const double u = polar.x[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        for (std::size_t j = 0; j < base.size(); ++j) {
            r.nodes.push_back(u);
            std::span<const double> sub = base.node(j);
            for (int a = 0; a < k - 1; ++a) r.nodes.push_back(s * sub[a]);
            r.weights.push_back(polar.w[i] * base.weights[j]);
        }
    }
    return r;
}

} // namespace

SphereRule sphere_rule(int k, int order) {
    if (order < 4) throw std::invalid_argument("sphere_rule: order must be >= 4");
    if (k != 2 && k != 3 && k != 4 && k != 6)
        throw std::invalid_argument("sphere_rule: unsupported ambient dimension");
    return sphere_rule_any(k, order);
}

BallRule ball_rule_weighted(int d, int order, double weight_exponent) {
    if (d != 2 && d != 3) throw std::invalid_argument("ball_rule: d must be 2 or 3");
    if (order < 4) throw std::invalid_argument("ball_rule: order must be >= 4");
    if (weight_exponent < 0) throw std::invalid_argument("ball_rule: negative exponent");

    // r = sin(phi), phi in [0, pi/2]; radial measure r^{d-1} dr picks up
    // cos(phi), the embedded weight contributes cos(phi)^{2e}.
    const int nphi = std::max(6, 4 * order);
    FixedRule gl = gauss_legendre_rule(nphi, 0.0, 0.5 * pi);
    SphereRule dir = sphere_rule(d, std::max(4, order));

    BallRule b;
    b.d = d;
    b.embedded_weight_exponent = weight_exponent;
    b.shell_size = dir.size();
    b.nodes.reserve(static_cast<std::size_t>(nphi) * dir.size() * d);
    b.weights.reserve(static_cast<std::size_t>(nphi) * dir.size());
    for (int i = 0; i < nphi; ++i) {
        const double phi = gl.x[i];
        const double r = std::sin(phi);
        const double c = std::cos(phi);
        const double radial =
            gl.w[i] * std::pow(r, d - 1) * c * std::pow(c, 2.0 * weight_exponent);
        b.shell_radii.push_back(r);
        if (d == 2) {
            b.rings.push_back({r, radial * dir.weights[0], dir.azimuth_count});
        }
        for (std::size_t j = 0; j < dir.size(); ++j) {
            std::span<const double> om = dir.node(j);
            for (int a = 0; a < d; ++a) b.nodes.push_back(r * om[a]);
            b.weights.push_back(radial * dir.weights[j]);
        }
    }
    return b;
}

BallRule ball_rule(int d, int order, bool with_slicing_weight) {
    return ball_rule_weighted(d, order, with_slicing_weight ? 0.5 * (d - 2) : 0.0);
}

double integrate_sphere(const SphereRule& rule,
                        const std::function<double(std::span<const double>)>& F) {
    return pairwise_sum_indexed<double>(0, rule.size(), [&](std::size_t i) {
        return rule.weights[i] * F(rule.node(i));
    });
}

std::string SphereRule::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
        char buf[256];
        int len = 0;
        for (int a = 0; a < k; ++a)
            len += std::snprintf(buf + len, sizeof(buf) - len, "%.17g,",
                                 nodes[i * k + a]);
        len += std::snprintf(buf + len, sizeof(buf) - len, "%.17g\n", weights[i]);
        out.append(buf, static_cast<std::size_t>(len));
    }
    return out;
}

std::string BallRule::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
        char buf[256];
        int len = 0;
        for (int a = 0; a < d; ++a)
            len += std::snprintf(buf + len, sizeof(buf) - len, "%.17g,",
                                 nodes[i * d + a]);
        len += std::snprintf(buf + len, sizeof(buf) - len, "%.17g\n", weights[i]);
        out.append(buf, static_cast<std::size_t>(len));
    }
    return out;
}

} // namespace bilab
