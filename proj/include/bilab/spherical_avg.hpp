#ifndef BILAB_SPHERICAL_AVG_HPP
#define BILAB_SPHERICAL_AVG_HPP

// Bilinear (and k-linear) spherical averages.  Two evaluation routes:
//   direct : quadrature on S^{2d-1}, node split into (y, z) = (first d, last d)
//   sliced : B^d x S^{d-1} with the boundary weight (1-|y|^2)^{(d-2)/2}
//            embedded in the ball weights
// The two routes computing the same number is the discrete form of the
// slicing identity; tests hold them against each other.

#include "bilab/grid.hpp"
#include "bilab/quadrature.hpp"

#include <span>
#include <vector>

namespace bilab {

// Averages operate on real scalar fields; `absolute` selects |f| sampling
// (the maximal-function variant) versus signed sampling (used by the
// smooth-corpus convergence and bilinearity tests).

double direct_bilinear_average(const RealField& f, const RealField& g,
                               std::span<const double> x, double t,
                               const SphereRule& rule_2d, bool absolute);

double sliced_bilinear_average(const RealField& f, const RealField& g,
                               std::span<const double> x, double t,
                               const BallRule& ball, const SphereRule& sphere,
                               bool absolute);

double linear_spherical_average(const RealField& f, std::span<const double> x,
                                double t, const SphereRule& sphere,
                                bool absolute = true);

// k-linear average by recursive slicing; balls[l] must carry the embedded
// exponent ((k-1-l)d - 2)/2 (see multilinear_rules).  k = 2 runs the same
// code path as sliced_bilinear_average.
double multilinear_average(std::span<const RealField> fs,
                           std::span<const double> x, double t,
                           std::span<const BallRule> balls,
                           const SphereRule& sphere, bool absolute);

// The k-1 ball rules plus final sphere rule for a k-linear average in
// dimension d.
struct MultilinearRules {
    std::vector<BallRule> balls;
    SphereRule sphere;
};
MultilinearRules multilinear_rules(int k, int d, int order);

// GridFunction conveniences (build the RealField view per call).
double direct_bilinear_average(const GridFunction& f, const GridFunction& g,
                               std::span<const double> x, double t,
                               const SphereRule& rule_2d, bool absolute = false);
double sliced_bilinear_average(const GridFunction& f, const GridFunction& g,
                               std::span<const double> x, double t,
                               const BallRule& ball, const SphereRule& sphere,
                               bool absolute = false);
double linear_spherical_average(const GridFunction& f, std::span<const double> x,
                                double t, const SphereRule& sphere,
                                bool absolute = true);

// Continuum-matching guard: evaluating an average at (x, t) reads points in
// B_inf(x, t); the periodic extension is faithful iff no wrapped image of the
// read set meets the support.  Throws std::domain_error on violation.
void check_no_wrap(const RealField& f, std::span<const double> x, double t);

} // namespace bilab

#endif
