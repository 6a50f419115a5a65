#ifndef BILAB_MAXIMAL_HPP
#define BILAB_MAXIMAL_HPP

// Discrete maximal operators: Hardy-Littlewood, linear spherical (global and
// [1,2]-localized), bilinear, and the strong two-radius bilinear variant.
// Every operator returns the grid of suprema together with the maximizing
// radius per point (the discrete linearization of the sup).

#include "bilab/grid.hpp"
#include "bilab/quadrature.hpp"
#include "bilab/spherical_avg.hpp"

#include <string>
#include <vector>

namespace bilab {

struct RadiusGrid {
    enum class Kind { GlobalDyadic, LocalUnit };
    Kind kind = Kind::GlobalDyadic;
    int k_min = -6;
    int k_max = 2;
    int n_local = 16;

    // {2^k (1 + j/n_local)}: strictly increasing, all positive;
    // LocalUnit restricts to k = 0 (t in [1,2)).
    std::vector<double> radii() const;

    static RadiusGrid global(int k_min, int k_max, int n_local = 16);
    static RadiusGrid local_unit(int n_local = 32);
};

struct MaximalField {
    GridFunction values;           // real-tagged suprema
    std::vector<double> argmax_t;  // maximizing radius per grid point
};

// Hardy-Littlewood: sup over radii of ball averages of |f|.  `normalized`
// divides by vol(B^d); the un-normalized form is the sup of plain
// integral(B(0,1)) |f(x - t y)| dy values.
MaximalField hl_maximal(const GridFunction& f, const RadiusGrid& radii,
                        int order = 8, bool normalized = true);

// sup over radii of the linear spherical average of |f|.
MaximalField spherical_maximal(const GridFunction& f, const RadiusGrid& radii,
                               int order = 8);

// sup over radii of the sliced bilinear average of |f|, |g|.
MaximalField bilinear_maximal(const GridFunction& f, const GridFunction& g,
                              const RadiusGrid& radii, int order = 8);

// sup over the product radius grid (t for the ball factor, s for the sphere
// factor); the diagonal restriction reproduces bilinear_maximal exactly.
GridFunction strong_bilinear_maximal(const GridFunction& f, const GridFunction& g,
                                     const RadiusGrid& radii_t,
                                     const RadiusGrid& radii_s, int order = 8);

// ---------------------------------------------------------------------------
// Pointwise domination report (the discrete Lemma-2.1 check):
//   M(f,g)(x) <= Mbar f(x) * S g(x)  at every grid point,
// where Mbar is the un-normalized ball-average sup over the same radius set
// (= vol(B^d) times the normalized Hardy-Littlewood maximal) and S runs over
// the induced radius set { t sqrt(1 - |y_j|^2) }.
// ---------------------------------------------------------------------------

struct DominationRow {
    std::size_t index;
    double bilinear;
    double hl_unnormalized;
    double spherical;
    double ratio;
    double argmax_t;
};

struct DominationReport {
    std::vector<DominationRow> rows;       // per grid point, f-then-g roles
    double max_ratio = 0;                  // over both symmetric variants
    double max_ratio_swapped = 0;
    bool pass = false;                     // max ratios <= 1 + 1e-12
    std::string to_csv() const;            // x index, value, argmax t, ratio
};

DominationReport pointwise_domination_report(const GridFunction& f,
                                             const GridFunction& g,
                                             const RadiusGrid& radii,
                                             int order = 8);

} // namespace bilab

#endif
