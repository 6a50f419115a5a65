#ifndef BILAB_GRID_HPP
#define BILAB_GRID_HPP

// Periodic sampled functions on [-L/2, L/2)^d and the operations the rest of
// the library is built from: Lebesgue/Lorentz norms, off-grid sampling,
// dyadic rescaling, and Fourier multiplier application.
//
// Conventions fixed here and used everywhere else:
//   * grid nodes     x_j = (j - n/2) h per axis,  h = L/n,  j = 0..n-1
//   * frequencies    xi_k = (k - n/2)/L per axis, k = 0..n-1
//   * transform      fhat(xi) = h^d sum_x f(x) e^{-2 pi i x.xi}
//   * inverse        f(x) = L^{-d} sum_xi fhat(xi) e^{+2 pi i x.xi}
// With these weights Parseval reads  h^d sum |f|^2 = L^{-d} sum |fhat|^2.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bilab {

using cplx = std::complex<double>;

struct GridFunction {
    int d = 2;              // spatial dimension (2 or 3)
    int n = 0;              // points per axis, power of two
    double box_length = 1;  // L
    std::vector<cplx> values;  // row-major, length n^d
    bool real_tag = false;  // holder of the "imag parts negligible" claim

    double h() const { return box_length / n; }
    double cell_volume() const;
    std::size_t size() const { return values.size(); }

    // node coordinate along one axis
    double coord(int j) const { return (j - n / 2) * h(); }

    std::size_t flat_index(std::span<const int> idx) const;

    // checks the stated struct invariants, throws std::invalid_argument
    void validate() const;
};

GridFunction make_grid(int d, int n, double box_length);

// Constant function c on the given grid.
GridFunction make_constant(int d, int n, double box_length, cplx c);

// f(x) = prod exp(-pi |x|^2 / width^2) centered at `center`.
GridFunction make_gaussian(int d, int n, double box_length,
                           std::span<const double> center, double width = 1.0);

// Real band-limited field: random Fourier coefficients on |k|_inf <= max_mode,
// inverse transform, real part, normalized to unit sample RMS, then
// offset + amplitude * field.  `spectral_decay` weights mode k by
// exp(-decay |k|^2).  Deterministic in `seed`.
GridFunction make_band_limited(int d, int n, double box_length, int max_mode,
                               std::uint64_t seed, double offset = 0.0,
                               double spectral_decay = 0.0, double amplitude = 1.0);

// Indicator of the set {x : predicate(x)} rasterized by node membership.
GridFunction make_indicator(int d, int n, double box_length,
                            const std::function<bool(std::span<const double>)>& member);

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

// Discrete L^p norm with reciprocal exponent up = 1/p in [0,1];
// up = 0 means the sup norm.
double lp_norm(const GridFunction& f, double up);

// Discrete Lorentz quasinorm L^{p,s} with reciprocals up = 1/p in (0,1],
// us = 1/s in [0,inf); us = 0 is the weak norm L^{p,inf}.  Computed from the
// exact step-function decreasing rearrangement over cell measures.
double lorentz_norm(const GridFunction& f, double up, double us);

// ---------------------------------------------------------------------------
// Sampling and rescaling
// ---------------------------------------------------------------------------

// Periodic multilinear interpolation at an arbitrary point.
cplx sample(const GridFunction& f, std::span<const double> x);

// Grid representation of x -> f(2^m x).  Exact relabeling: same values,
// box length L / 2^m, so every norm scales exactly.
GridFunction rescale(const GridFunction& f, int m);

// ---------------------------------------------------------------------------
// Fourier side
// ---------------------------------------------------------------------------

// fhat on the frequency lattice (stored in the same row-major layout, index k
// along each axis corresponding to xi = (k - n/2)/L).
std::vector<cplx> forward_transform(const GridFunction& f);
GridFunction inverse_transform(int d, int n, double box_length,
                               std::span<const cplx> fhat);

// f -> F^{-1}[ m(xi) fhat(xi) ].  The multiplier is evaluated once per
// lattice frequency; `m` receives the frequency vector xi.
GridFunction apply_fourier_multiplier(
    const GridFunction& f, const std::function<cplx(std::span<const double>)>& m);

// Frequency-side energy L^{-d} sum |fhat|^2 (Parseval partner of lp_norm(.,1/2)^2).
double frequency_energy(const GridFunction& f);

// ---------------------------------------------------------------------------
// Snapshot format: binary header (d, n as little-endian int64, L as little-
// endian ieee double) followed by n^d (re, im) pairs of doubles, plus a JSON
// sidecar `<path>.json` with provenance.
// ---------------------------------------------------------------------------

void write_snapshot(const GridFunction& f, const std::string& path,
                    const std::string& note = "");
GridFunction read_snapshot(const std::string& path);

// Fast raw view of the real part (or modulus) used by the quadrature-heavy
// operators; owns a copy of the data.
struct RealField {
    int d = 2;
    int n = 0;
    double box_length = 1;
    std::vector<double> v;

    double h() const { return box_length / n; }
    double sample(const double* x) const;  // periodic multilinear interpolation
    double max_abs() const;
    // sup-norm radius of the smallest origin-centered box containing all
    // cells with |value| > threshold; 0 if none.
    double support_radius(double threshold = 0.0) const;
};

RealField real_field(const GridFunction& f, bool absolute);

} // namespace bilab

#endif
