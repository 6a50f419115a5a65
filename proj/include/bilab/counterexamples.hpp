#ifndef BILAB_COUNTEREXAMPLES_HPP
#define BILAB_COUNTEREXAMPLES_HPP

// Generators for the explicit indicator families used in the necessity
// arguments, the delta/R sweep driver, and the log-log slope fitter that
// turns "\gtrsim delta^a" claims into measured exponents.

#include "bilab/exponent_point.hpp"
#include "bilab/grid.hpp"
#include "bilab/maximal.hpp"

#include <string>
#include <vector>

namespace bilab {

struct FamilyMeta {
    std::string family;   // "knapp" | "annulus" | "scaling"
    int d = 2;
    double delta = 0;
    double c1 = 0;        // constants from the construction chain
    double c2 = 0;
    double eps0 = 0;
    int n = 0;
    double box_length = 0;
};

struct FamilyPair {
    GridFunction f, g;
    std::vector<std::vector<double>> probes;  // probe points for the statistic
    FamilyMeta meta;
};

// Grid configuration for family generators.
struct FamilyGrid {
    int d = 2;
    int n = 2048;
    double box_length = 4.0;
};

// Concentrated-ball pair f = chi_{B(0,delta)}, g = chi_{B(0,C1 delta)} with
// probe points in the annulus {1/sqrt2 <= |x| <= 1/sqrt2 + eps0}.
FamilyPair knapp_family(double delta, const FamilyGrid& grid, double eps0 = 0.1);

// Thin-annulus pair around radius 1/sqrt2 of widths 4 delta and 2 C1 delta,
// probes in {|x| <= delta}.
FamilyPair annulus_family(double delta, double eps, const FamilyGrid& grid);

// Dyadic dilates (f(x / 2^m), g(x / 2^m)) as exact grid relabelings.
std::vector<std::pair<GridFunction, GridFunction>> scaling_family(
    const GridFunction& f, const GridFunction& g, std::span<const int> m_list);

struct ScanRecord {
    double parameter = 0;  // delta or R
    double ratio = 0;      // probe statistic or norm quotient
    FamilyMeta meta;
    ExponentPoint exponents;
    double norm_f = 0, norm_g = 0;  // input norms entering a quotient
};

struct ScanConfig {
    FamilyGrid grid;
    ExponentPoint exponents;       // used by norm-quotient scans
    double eps0 = 0.1;             // probe annulus width (knapp)
    double eps_annulus = 0.1;      // the annulus family epsilon
    int t_samples = 0;             // 0 = auto (resolves the smallest delta)
    int scaling_radius_samples = 4;  // radii per dyadic block for "scaling"
    int scaling_order = 6;         // quadrature order for the norm-quotient scan
    int scaling_seed_modes = 2;    // band limit of the base pair
    std::uint64_t seed = 1;
};

// One record per parameter.  family is "knapp", "annulus" (parameter =
// delta, statistic = min-over-probes localized bilinear sup) or "scaling"
// (parameter = R = 2^m, statistic = Lorentz/Lebesgue norm quotient).
std::vector<ScanRecord> run_scan(const std::string& family,
                                 std::span<const double> params,
                                 const ScanConfig& config);

struct SlopeFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    double slope_stderr = 0;
};

// Least squares of log(ratio) against log(parameter).
SlopeFit fit_scaling_exponent(std::span<const ScanRecord> records);

std::string scan_to_csv(std::span<const ScanRecord> records, const SlopeFit* fit);
std::string scan_to_json(std::span<const ScanRecord> records, const SlopeFit* fit);

// Localized (t in [1,2]) bilinear sup at a single point, evaluated with a
// ring-windowed d = 2 rule that resolves features of scale `resolve`.
// Exposed for tests; run_scan uses it for the probe statistics.
double localized_bilinear_sup_at(const RealField& f, const RealField& g,
                                 std::span<const double> x, double resolve,
                                 int t_samples);

} // namespace bilab

#endif
