#ifndef BILAB_QUADRATURE_HPP
#define BILAB_QUADRATURE_HPP

// Positive-weight product quadrature rules on hyperspheres S^{k-1} and unit
// balls B^d.  Sphere rules recurse through hyperspherical coordinates,
//   S^{k-1}:  omega = (u, sqrt(1-u^2) omega'),  omega' in S^{k-2},
// with Gaussian quadrature in u against the weight (1-u^2)^{(k-3)/2} and a
// uniform (trapezoid) rule on the base circle.  Ball rules use the polar
// substitution r = sin(phi) so the boundary weight (1-r^2)^e = cos(phi)^{2e}
// stays smooth.

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bilab {

struct SphereRule {
    int k = 2;                        // rule lives on S^{k-1} in R^k
    std::vector<double> nodes;        // flattened, k doubles per node
    std::vector<double> weights;      // positive, sum = |S^{k-1}|
    // ring layout for k = 2: azimuth_count equally spaced nodes
    int azimuth_count = 0;

    std::size_t size() const { return weights.size(); }
    std::span<const double> node(std::size_t i) const {
        return {nodes.data() + i * static_cast<std::size_t>(k),
                static_cast<std::size_t>(k)};
    }
    std::string to_csv() const;
};

// One radial ring of a d = 2 ball rule (all azimuths share radius and weight).
struct BallRing {
    double radius = 0;
    double weight = 0;     // per-node weight (already includes azimuth factor)
    int azimuth_count = 0;
};

struct BallRule {
    int d = 2;
    std::vector<double> nodes;    // flattened, d doubles per node, all |y| < 1
    std::vector<double> weights;  // positive
    double embedded_weight_exponent = 0;  // e in (1-|y|^2)^e, 0 when plain
    // nodes are shell-major: consecutive blocks of shell_size share a radius
    std::size_t shell_size = 0;
    std::vector<double> shell_radii;
    std::vector<BallRing> rings;  // populated for d = 2 (fast cap traversal)

    std::size_t size() const { return weights.size(); }
    std::span<const double> node(std::size_t i) const {
        return {nodes.data() + i * static_cast<std::size_t>(d),
                static_cast<std::size_t>(d)};
    }
    std::string to_csv() const;
};

// Rule on S^{k-1}, k in {2,3,4,6}; exact for polynomials of total degree
// <= order (trapezoid in azimuth handles trig degree, Gauss-Jacobi in each
// cosine handles the polar weights).
SphereRule sphere_rule(int k, int order);

// Rule on B^d, d in {2,3}.  with_slicing_weight embeds (1-|y|^2)^{(d-2)/2}
// into the weights.
BallRule ball_rule(int d, int order, bool with_slicing_weight);

// General embedded boundary exponent (used by the k-linear slicing recursion
// where the exponent is ((k-l)d - 2)/2 at level l).
BallRule ball_rule_weighted(int d, int order, double weight_exponent);

double integrate_sphere(const SphereRule& rule,
                        const std::function<double(std::span<const double>)>& F);

// surface area of S^{k-1} and volume of B^d
double sphere_area(int k);
double ball_volume(int d);

// Gauss-Legendre on [a,b] (exposed for the oracle-style radial integrals).
void gauss_legendre(int npts, double a, double b,
                    std::vector<double>& x, std::vector<double>& w);

} // namespace bilab

#endif
