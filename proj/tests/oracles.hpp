#ifndef BILAB_TEST_ORACLES_HPP
#define BILAB_TEST_ORACLES_HPP

// Test-only oracles, kept independent of the implementation paths they check.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracles {

// sum of |v|^p in ascending-magnitude order with long double accumulation
inline double sorted_power_sum(std::vector<double> mags, double p) {
    std::sort(mags.begin(), mags.end());
    long double acc = 0;
    for (double m : mags) acc += std::pow(static_cast<long double>(m), p);
    return static_cast<double>(acc);
}

// integral of x1^a1 ... xk^ak over S^{k-1}: 2 prod Gamma((a_i+1)/2) /
// Gamma(sum (a_i+1)/2) when all a_i even, 0 otherwise
inline double sphere_monomial_moment(const std::vector<int>& a) {
    for (int e : a)
        if (e % 2 != 0) return 0.0;
    double num = 2.0, s = 0.0;
    for (int e : a) {
        num *= std::tgamma(0.5 * (e + 1));
        s += 0.5 * (e + 1);
    }
    return num / std::tgamma(s);
}

// dense Gauss-Legendre integral of g on [a, b] (512 panels of 4-pt GL)
template <typename F>
double dense_integral(F&& g, double a, double b) {
    static const double x4[4] = {-0.8611363115940526, -0.3399810435848563,
                                 0.3399810435848563, 0.8611363115940526};
    static const double w4[4] = {0.3478548451374538, 0.6521451548625461,
                                 0.6521451548625461, 0.3478548451374538};
    const int panels = 512;
    const double hp = (b - a) / panels;
    long double acc = 0;
    for (int i = 0; i < panels; ++i) {
        const double mid = a + (i + 0.5) * hp;
        for (int j = 0; j < 4; ++j) acc += 0.5 * hp * w4[j] * g(mid + 0.5 * hp * x4[j]);
    }
    return static_cast<double>(acc);
}

// area of the intersection of two disks with radii r1, r2 and center
// distance c (the lens formula)
inline double disk_overlap(double r1, double r2, double c) {
    if (c >= r1 + r2) return 0.0;
    if (c <= std::abs(r1 - r2)) {
        const double r = std::min(r1, r2);
        return std::numbers::pi * r * r;
    }
    const double a1 = std::acos((c * c + r1 * r1 - r2 * r2) / (2 * c * r1));
    const double a2 = std::acos((c * c + r2 * r2 - r1 * r1) / (2 * c * r2));
    return r1 * r1 * (a1 - 0.5 * std::sin(2 * a1)) +
           r2 * r2 * (a2 - 0.5 * std::sin(2 * a2));
}

} // namespace oracles

#endif
