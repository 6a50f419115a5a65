#ifndef BILAB_EXPONENTS_HPP
#define BILAB_EXPONENTS_HPP

// The exponent calculus: critical indices, the alpha* function with its
// three-region case analysis, and the boundedness-region classifiers for the
// global and localized bilinear maximal operators, the localized linear
// operator, and the maximal bilinear Bochner-Riesz necessity bound.
//
// Every classifier takes exact rational reciprocals (p = inf is 0) and never
// guesses: points the theorems leave unresolved come back as Open.

#include "bilab/exponent_point.hpp"
#include "bilab/rational.hpp"

#include <string>

namespace bilab {

enum class Region { Bounded, Unbounded, WeakLorentz, Open };

std::string region_name(Region r);

struct RegionVerdict {
    Region status = Region::Open;
    std::string case_tag;      // "a"/"b"/"c", region or vertex label
    std::string citation;      // which statement decides it
    std::string lorentz_note;  // weak-type indices or the (c) constraint
};

// critical index max(d |up - 1/2| - 1/2, 0)
double alpha_critical(double up, int d);

struct AlphaStar {
    double value = 0;
    std::string region;     // "D1", "D2", "D3"
    bool tie = false;       // u = v = nu satisfies both D1 and D2 definitions
    double value_d1 = 0;    // branch values reported on a tie
    double value_d2 = 0;
};

// alpha*_{1/nu}(p, q) in reciprocal variables; requires up, uq in [0, 1/2]
// and nu in [0, (d-1)/(2d)].
AlphaStar alpha_star(Rat up, Rat uq, Rat nu, int d);

// min{ 2 + 12/(4d - 6 - k), 2(d+2)/d }, k = d mod 3, with the divergence
// convention (nonpositive denominator means the first branch is +infinity).
Rat p_s(int d);

// Theorem-1.1 classifier for the global bilinear spherical maximal function.
RegionVerdict global_region(int d, Rat up, Rat uq, Rat ur);

// Localized (t in [1,2]) classifier: sufficiency region, necessity region,
// Open in between.
RegionVerdict localized_region(int d, Rat up, Rat uq, Rat ur);

// Region for the localized linear spherical maximal operator: the closed
// polygon with vertices (0,0), ((d-1)/d,(d-1)/d), ((d-1)/d,1/d),
// ((d^2-d)/(d^2+1),(d-1)/(d^2+1)), minus/flagging the named vertices.
RegionVerdict delta_region(int d, Rat u, Rat v);

// Unbounded when alpha < (2d-1)/2 (ur - 1); the statement encodes only the
// necessity, so everything else is Open.
RegionVerdict br_maximal_necessity(double alpha, Rat ur, int d);

// implemented sufficient threshold min(alpha*_{p_s}(p,q), d - 1/2)
double sufficient_alpha(Rat up, Rat uq, int d);

// double-based conveniences (snap to small rationals, throw when impossible)
RegionVerdict global_region(const ExponentPoint& e);
RegionVerdict localized_region(const ExponentPoint& e);

} // namespace bilab

#endif
