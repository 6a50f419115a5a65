#ifndef BILAB_EXPONENT_POINT_HPP
#define BILAB_EXPONENT_POINT_HPP

#include <cmath>
#include <optional>

namespace bilab {

// All Lebesgue/Lorentz exponents in reciprocal form: up = 1/p with p = inf
// stored as 0, so no infinities ever enter the arithmetic.
struct ExponentPoint {
    int d = 2;
    double up = 0;   // 1/p in [0,1]
    double uq = 0;   // 1/q in [0,1]
    double ur = 0;   // 1/r in [0,inf)
    std::optional<double> lorentz_s;  // 1/s
    std::optional<double> lorentz_t;  // 1/t
    std::optional<double> lorentz_u;  // 1/u

    bool holder() const { return std::abs(up + uq - ur) <= 1e-12; }
    double holder_defect() const { return ur - up - uq; }
};

} // namespace bilab

#endif
