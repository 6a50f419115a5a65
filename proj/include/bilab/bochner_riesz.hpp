#ifndef BILAB_BOCHNER_RIESZ_HPP
#define BILAB_BOCHNER_RIESZ_HPP

// Linear and bilinear Bochner-Riesz means on the discrete frequency lattice,
// the dyadic decomposition of the multiplier profile (1-t)^alpha_+, annular
// pieces, square functions, kernel decay and multiplier partition reports.
//
// Bilinear operators go through exact frequency-pair summation:
//   hhat(zeta) = sum_{xi + eta = zeta (lattice)} m(xi, eta) fhat(xi) ghat(eta)
// followed by one inverse transform; cost n^{2d} behind a budget guard.

#include "bilab/grid.hpp"
#include "bilab/maximal.hpp"

#include <functional>
#include <string>
#include <vector>

namespace bilab {

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

struct BumpProfile {
    std::function<double(double)> eval;   // raw closure (pre clamping)
    std::function<double(double)> deriv;  // optional closed-form derivative
    double support_radius = 1.0;
    std::vector<double> certified_cn;     // sup |phi^(n)|, n = 0..N
    std::string name;

    // evaluation clamps to exact zero outside the support radius
    double operator()(double t) const {
        if (std::abs(t) >= support_radius) return 0.0;
        return eval(t);
    }
    double derivative(double t) const;

    // member of the normalized class C^N(I): supp in [-1,1] and all
    // certified derivative sup-norms <= 1
    bool in_class_cn() const;
};

// Dense-sampling + iterated 4th-order finite-difference certification of the
// derivative sup-norms 0..N.
void certify(BumpProfile& p, int N);

// phi / (1.01 * max certified norm): a certified member of C^N(I).
BumpProfile normalized(const BumpProfile& p, int N);

// library profiles (uncertified; call certify or normalized as needed)
BumpProfile bump_exp(double center = 0.0, double halfwidth = 1.0);
BumpProfile bump_poly(int k);                 // (1 - t^2)^k
BumpProfile bump_two_peak();
BumpProfile bump_tilted();
BumpProfile partition_profile();              // sum_k phi(t+k) = 1 exactly
std::vector<BumpProfile> profile_corpus(int N);  // 5 certified C^N(I) members

// ---------------------------------------------------------------------------
// Dyadic decomposition of (1-t)^alpha_+
// ---------------------------------------------------------------------------

struct ProfileDecomposition {
    BumpProfile psi;       // supported in [1/2, 2]
    BumpProfile psi0;      // supported in [-3/4, 3/4]
    double alpha = 1;
    int level = 10;        // truncation J
    double residual_resolved = 0;  // sup over {t in [0,1): 1-t >= 2^-J}
    double residual_global = 0;    // sup over [0,1)

    // truncated reconstruction sum_{j=2}^{J} 2^{-j alpha} psi(2^j (1-t)) + psi0(t)
    double reconstruction(double t) const;
};

ProfileDecomposition dyadic_profile_decomposition(double alpha, int J);

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

struct BilinearMultiplier {
    std::function<double(std::span<const double>, std::span<const double>)> m;
    bool symmetric = true;
    std::string support_note;
};

// exact pair summation; throws std::length_error over the n^{2d} budget
GridFunction apply_bilinear_multiplier(const GridFunction& f, const GridFunction& g,
                                       const BilinearMultiplier& mult);

// (1 - t)^alpha_+ with the r^0_+ = indicator(r > 0) convention at alpha = 0
double plus_power(double x, double alpha);

GridFunction br_linear(const GridFunction& f, double alpha, double lambda);
GridFunction br_bilinear(const GridFunction& f, const GridFunction& g,
                         double alpha, double lambda);
GridFunction br_bilinear_maximal(const GridFunction& f, const GridFunction& g,
                                 double alpha, const RadiusGrid& lambda_grid);

// annular piece with multiplier psi((1 - |lambda xi|^2 - |lambda eta|^2)/delta)
GridFunction annular_bilinear(const GridFunction& f, const GridFunction& g,
                              double delta, double lambda, const BumpProfile& psi);

// linear multiplier phi((rho - |lambda xi|^2)/delta); requires certified phi
GridFunction s_op(const GridFunction& f, const BumpProfile& phi, double rho,
                  double delta, double lambda);

// ( integral_{1/2}^{2} |phi((t-|D|^2)/delta) f|^2 dt )^{1/2}, trapezoid in t
GridFunction lo_square_function(const GridFunction& f, const BumpProfile& phi,
                                double delta, int t_samples);

struct MixedSquareResult {
    GridFunction sup;                  // sup_k of the per-k square functions
    std::vector<GridFunction> per_k;
    std::vector<int> ks;
};

// D^phi_{delta,k} f = ( sum_{rho in delta Z cap [0,2]} int_1^2
//                       |S^phi_{rho,delta,2^k lambda} f|^2 d lambda )^{1/2}
MixedSquareResult mixed_square_function(const GridFunction& f, const BumpProfile& phi,
                                        double delta, int k_min, int k_max,
                                        int lambda_samples);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct KernelDecayReport {
    double constant = 0;        // sup_x |K| delta^{-d/2} (1 + sqrt(delta)|x|)^{d+1}
    double max_radial_asym = 0; // |K| spread across lattice-symmetric points
    double boundary_peak = 0;   // max |K| on the outermost cell shell
    double peak = 0;            // max |K|
};

// throws std::domain_error when the box truncates the decay tail: the
// outermost-shell peak must stay below tail_tolerance * peak
KernelDecayReport kernel_decay_check(const BumpProfile& phi, double rho, double delta,
                                     int d, int n, double box_length,
                                     double tail_tolerance = 2e-3);

struct PartitionReport {
    double max_error = 0;       // lattice-wise identity defect
    long active_cells = 0;      // distinct (varrho, rho) cells that ever fire
    long cell_bound = 0;        // (6 delta/tilde + 2)(2/tilde + 2)
    int max_cells_per_pair = 0; // should collapse to <= 4
    double pou_defect = 0;      // sup |sum_k phi(t+k) - 1| on a dense sample
};

PartitionReport multiplier_partition_check(double delta, double eps, double lambda,
                                           const BumpProfile& psi, int d, int n,
                                           double box_length);

struct FtcBridgeReport {
    double max_ratio = 0;  // LHS / RHS over checked points
    bool pass = false;
};

// sup over sampled lambda in [2^k, 2^{k+1}] of |B^delta_lambda(f,g)(x)| versus
// the t-integral of |B| plus |d/dt B| (the explicit derivative multiplier),
// checked per grid point.  `slack` absorbs the trapezoid error.
FtcBridgeReport ftc_bridge_check(const GridFunction& f, const GridFunction& g,
                                 double delta, const BumpProfile& psi, int k,
                                 int lambda_samples, double slack = 0.05);

} // namespace bilab

#endif
