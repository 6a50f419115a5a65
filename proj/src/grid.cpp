#include "bilab/grid.hpp"
#include "bilab/pairwise.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bilab {

namespace {

bool is_pow2(int n) { return n >= 4 && (n & (n - 1)) == 0; }

void check_geometry(int d, int n, double box_length) {
    if (d < 2 || d > 3) throw std::invalid_argument("grid: d must be 2 or 3");
    if (!is_pow2(n)) throw std::invalid_argument("grid: n must be a power of two >= 4");
    if (!(box_length > 0)) throw std::invalid_argument("grid: box_length must be positive");
}

std::size_t pow_size(int n, int d) {
    std::size_t s = 1;
    for (int i = 0; i < d; ++i) s *= static_cast<std::size_t>(n);
    return s;
}

} // namespace

double GridFunction::cell_volume() const {
    // repeated multiply, not std::pow: exact under power-of-two rescaling
    double v = 1;
    for (int a = 0; a < d; ++a) v *= h();
    return v;
}

std::size_t GridFunction::flat_index(std::span<const int> idx) const {
    std::size_t f = 0;
    for (int a = 0; a < d; ++a) f = f * n + static_cast<std::size_t>(idx[a]);
    return f;
}

void GridFunction::validate() const {
    check_geometry(d, n, box_length);
    if (values.size() != pow_size(n, d))
        throw std::invalid_argument("grid: values length must equal n^d");
    if (!(cell_volume() > 0))
        throw std::invalid_argument("grid: cell volume must be positive");
    if (real_tag) {
        for (const cplx& v : values)
            if (std::abs(v.imag()) > 1e-12)
                throw std::invalid_argument("grid: real-tagged function has imaginary part");
    }
}

GridFunction make_grid(int d, int n, double box_length) {
    check_geometry(d, n, box_length);
    GridFunction g;
    g.d = d;
    g.n = n;
    g.box_length = box_length;
    g.values.assign(pow_size(n, d), cplx{0.0, 0.0});
    g.real_tag = true;
    return g;
}

GridFunction make_constant(int d, int n, double box_length, cplx c) {
    GridFunction g = make_grid(d, n, box_length);
    std::fill(g.values.begin(), g.values.end(), c);
    g.real_tag = (c.imag() == 0.0);
    return g;
}

GridFunction make_gaussian(int d, int n, double box_length,
                           std::span<const double> center, double width) {
    GridFunction g = make_grid(d, n, box_length);
    std::vector<int> idx(d, 0);
    for (std::size_t f = 0; f < g.size(); ++f) {
        std::size_t r = f;
        for (int a = d - 1; a >= 0; --a) { idx[a] = static_cast<int>(r % n); r /= n; }
        double q = 0;
        for (int a = 0; a < d; ++a) {
            double dx = g.coord(idx[a]) - (center.empty() ? 0.0 : center[a]);
            q += dx * dx;
        }
        g.values[f] = std::exp(-std::numbers::pi * q / (width * width));
    }
    return g;
}

GridFunction make_indicator(int d, int n, double box_length,
                            const std::function<bool(std::span<const double>)>& member) {
    GridFunction g = make_grid(d, n, box_length);
    std::vector<int> idx(d, 0);
    std::vector<double> x(d, 0.0);
    for (std::size_t f = 0; f < g.size(); ++f) {
        std::size_t r = f;
        for (int a = d - 1; a >= 0; --a) { idx[a] = static_cast<int>(r % n); r /= n; }
        for (int a = 0; a < d; ++a) x[a] = g.coord(idx[a]);
        g.values[f] = member(x) ? 1.0 : 0.0;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

double lp_norm(const GridFunction& f, double up) {
    if (up < 0.0 || up > 1.0) throw std::invalid_argument("lp_norm: up must be in [0,1]");
    if (up == 0.0) {
        double m = 0;
        for (const cplx& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    const double p = 1.0 / up;
    std::vector<double> terms(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) terms[i] = std::pow(std::abs(f.values[i]), p);
    double s = pairwise_sum<double>(terms.data(), terms.size());
    return std::pow(f.cell_volume() * s, up);
}

double lorentz_norm(const GridFunction& f, double up, double us) {
    if (!(up > 0.0) || up > 1.0)
        throw std::invalid_argument("lorentz_norm: up must be in (0,1]");
    if (us < 0.0) throw std::invalid_argument("lorentz_norm: us must be >= 0");
    std::vector<double> mags(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) mags[i] = std::abs(f.values[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    const double hv = f.cell_volume();
    if (us == 0.0) {
        // weak norm: sup_k mu_k^{1/p} f*_k, mu_k the right step endpoint
        double best = 0;
        for (std::size_t k = 0; k < mags.size(); ++k) {
            if (mags[k] == 0.0) break;
            best = std::max(best, std::pow((k + 1) * hv, up) * mags[k]);
        }
        return best;
    }
    // || f ||_{p,s}^s = sum_k f*_k^s (p/s)(mu_k^{s/p} - mu_{k-1}^{s/p}),
    // the exact integral of [t^{1/p} f*(t)]^s dt/t over each step.
    const double s = 1.0 / us;
    const double sp = s * up;  // s/p
    double total = 0;
    double prev = 0;
    for (std::size_t k = 0; k < mags.size(); ++k) {
        if (mags[k] == 0.0) break;
        const double mu = std::pow((k + 1) * hv, sp);
        total += std::pow(mags[k], s) * (mu - prev) / sp;
        prev = mu;
    }
    return std::pow(total, us);
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

namespace {

// wrapped base index and fractional offset along one axis
inline void locate(double x, double h, int n, int& j0, double& fr) {
    double u = x / h + n / 2.0;
    double fl = std::floor(u);
    fr = u - fl;
    long long j = static_cast<long long>(fl) % n;
    if (j < 0) j += n;
    j0 = static_cast<int>(j);
}

} // namespace

cplx sample(const GridFunction& f, std::span<const double> x) {
    const double hs = f.h();
    const int n = f.n;
    int j0[3];
    double fr[3];
    for (int a = 0; a < f.d; ++a) locate(x[a], hs, n, j0[a], fr[a]);
    if (f.d == 2) {
        const int i1 = (j0[0] + 1) % n, k1 = (j0[1] + 1) % n;
        const cplx* v = f.values.data();
        const cplx v00 = v[static_cast<std::size_t>(j0[0]) * n + j0[1]];
        const cplx v01 = v[static_cast<std::size_t>(j0[0]) * n + k1];
        const cplx v10 = v[static_cast<std::size_t>(i1) * n + j0[1]];
        const cplx v11 = v[static_cast<std::size_t>(i1) * n + k1];
        const double a0 = 1 - fr[0], a1 = fr[0], b0 = 1 - fr[1], b1 = fr[1];
        return a0 * (b0 * v00 + b1 * v01) + a1 * (b0 * v10 + b1 * v11);
    }
    // d == 3
    const int i1 = (j0[0] + 1) % n, k1 = (j0[1] + 1) % n, l1 = (j0[2] + 1) % n;
    auto at = [&](int i, int k, int l) {
        return f.values[(static_cast<std::size_t>(i) * n + k) * n + l];
    };
    cplx c00 = (1 - fr[2]) * at(j0[0], j0[1], j0[2]) + fr[2] * at(j0[0], j0[1], l1);
    cplx c01 = (1 - fr[2]) * at(j0[0], k1, j0[2]) + fr[2] * at(j0[0], k1, l1);
    cplx c10 = (1 - fr[2]) * at(i1, j0[1], j0[2]) + fr[2] * at(i1, j0[1], l1);
    cplx c11 = (1 - fr[2]) * at(i1, k1, j0[2]) + fr[2] * at(i1, k1, l1);
    cplx c0 = (1 - fr[1]) * c00 + fr[1] * c01;
    cplx c1 = (1 - fr[1]) * c10 + fr[1] * c11;
    return (1 - fr[0]) * c0 + fr[0] * c1;
}

double RealField::sample(const double* x) const {
    const double hs = h();
    int j0[3];
    double fr[3];
    for (int a = 0; a < d; ++a) locate(x[a], hs, n, j0[a], fr[a]);
    if (d == 2) {
        const int i1 = (j0[0] + 1) % n, k1 = (j0[1] + 1) % n;
        const double* p = v.data();
        const double v00 = p[static_cast<std::size_t>(j0[0]) * n + j0[1]];
        const double v01 = p[static_cast<std::size_t>(j0[0]) * n + k1];
        const double v10 = p[static_cast<std::size_t>(i1) * n + j0[1]];
        const double v11 = p[static_cast<std::size_t>(i1) * n + k1];
        return (1 - fr[0]) * ((1 - fr[1]) * v00 + fr[1] * v01) +
           fr[0] * ((1 - fr[1]) * v10 + fr[1] * v11);
    }
    const int i1 = (j0[0] + 1) % n, k1 = (j0[1] + 1) % n, l1 = (j0[2] + 1) % n;
    auto at = [&](int i, int k, int l) {
        return v[(static_cast<std::size_t>(i) * n + k) * n + l];
    };
    double c00 = (1 - fr[2]) * at(j0[0], j0[1], j0[2]) + fr[2] * at(j0[0], j0[1], l1);
    double c01 = (1 - fr[2]) * at(j0[0], k1, j0[2]) + fr[2] * at(j0[0], k1, l1);
    double c10 = (1 - fr[2]) * at(i1, j0[1], j0[2]) + fr[2] * at(i1, j0[1], l1);
    double c11 = (1 - fr[2]) * at(i1, k1, j0[2]) + fr[2] * at(i1, k1, l1);
    double c0 = (1 - fr[1]) * c00 + fr[1] * c01;
    double c1 = (1 - fr[1]) * c10 + fr[1] * c11;
    return (1 - fr[0]) * c0 + fr[0] * c1;
}

double RealField::max_abs() const {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double RealField::support_radius(double threshold) const {
    const double hs = h();
    double r = 0;
    bool any = false;
    std::size_t f = 0;
    std::vector<int> idx(d, 0);
    for (f = 0; f < v.size(); ++f) {
        if (std::abs(v[f]) <= threshold) continue;
        any = true;
        std::size_t rest = f;
        double m = 0;
        for (int a = d - 1; a >= 0; --a) {
            int j = static_cast<int>(rest % n);
            rest /= n;
            m = std::max(m, std::abs((j - n / 2) * hs));
        }
        r = std::max(r, m);
    }
    return any ? r : 0.0;
}

RealField real_field(const GridFunction& f, bool absolute) {
    RealField r;
    r.d = f.d;
    r.n = f.n;
    r.box_length = f.box_length;
    r.v.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        r.v[i] = absolute ? std::abs(f.values[i]) : f.values[i].real();
    return r;
}

// ---------------------------------------------------------------------------
// Rescale
// ---------------------------------------------------------------------------

GridFunction rescale(const GridFunction& f, int m) {
    if (std::abs(m) > 40) throw std::invalid_argument("rescale: |m| too large");
    GridFunction g = f;
    g.box_length = std::ldexp(f.box_length, -m);  // exact power-of-two scaling
    return g;
}

// ---------------------------------------------------------------------------
// FFT machinery.  FFTW computes sum_j f_j e^{-2 pi i jk/n}; the centered
// convention needs (-1)^j / (-1)^k checkerboards and a per-axis constant
// i^{-n} (= +1 for n % 4 == 0).
// ---------------------------------------------------------------------------

namespace {

std::mutex fftw_mutex;

void run_fft(int d, int n, std::vector<cplx>& data, int sign) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        std::vector<int> dims(d, n);
        plan = fftw_plan_dft(d, dims.data(),
                             reinterpret_cast<fftw_complex*>(data.data()),
                             reinterpret_cast<fftw_complex*>(data.data()),
                             sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
    }
}

// multiply by (-1)^{j_1 + ... + j_d}
void checkerboard(int d, int n, std::vector<cplx>& data) {
    const std::size_t total = data.size();
    for (std::size_t f = 0; f < total; ++f) {
        std::size_t r = f;
        int parity = 0;
        for (int a = 0; a < d; ++a) { parity ^= static_cast<int>(r % n) & 1; r /= n; }
        if (parity) data[f] = -data[f];
    }
}

double axis_constant(int n) { return (n % 4 == 0) ? 1.0 : -1.0; }  // i^{-n}, n even

} // namespace

std::vector<cplx> forward_transform(const GridFunction& f) {
    std::vector<cplx> work = f.values;
    checkerboard(f.d, f.n, work);
    run_fft(f.d, f.n, work, FFTW_FORWARD);
    checkerboard(f.d, f.n, work);
    double scale = std::pow(f.h(), f.d);
    for (int a = 0; a < f.d; ++a) scale *= axis_constant(f.n);
    for (cplx& v : work) v *= scale;
    return work;
}

GridFunction inverse_transform(int d, int n, double box_length,
                               std::span<const cplx> fhat) {
    GridFunction g = make_grid(d, n, box_length);
    g.real_tag = false;
    g.values.assign(fhat.begin(), fhat.end());
    checkerboard(d, n, g.values);
    run_fft(d, n, g.values, FFTW_BACKWARD);
    checkerboard(d, n, g.values);
    double scale = std::pow(1.0 / box_length, d);
    for (int a = 0; a < d; ++a) scale *= axis_constant(n);  // conj of +-1 is itself
    for (cplx& v : g.values) v *= scale;
    return g;
}

GridFunction apply_fourier_multiplier(
    const GridFunction& f, const std::function<cplx(std::span<const double>)>& m) {
    std::vector<cplx> fhat = forward_transform(f);
    std::vector<double> xi(f.d, 0.0);
    const double dxi = 1.0 / f.box_length;
    for (std::size_t k = 0; k < fhat.size(); ++k) {
        std::size_t r = k;
        for (int a = f.d - 1; a >= 0; --a) {
            xi[a] = (static_cast<int>(r % f.n) - f.n / 2) * dxi;
            r /= f.n;
        }
        fhat[k] *= m(xi);
    }
    return inverse_transform(f.d, f.n, f.box_length, fhat);
}

double frequency_energy(const GridFunction& f) {
    std::vector<cplx> fhat = forward_transform(f);
    std::vector<double> terms(fhat.size());
    for (std::size_t i = 0; i < fhat.size(); ++i) terms[i] = std::norm(fhat[i]);
    return pairwise_sum<double>(terms.data(), terms.size()) /
           std::pow(f.box_length, f.d);
}

// ---------------------------------------------------------------------------
// Random band-limited corpus
// ---------------------------------------------------------------------------

GridFunction make_band_limited(int d, int n, double box_length, int max_mode,
                               std::uint64_t seed, double offset,
                               double spectral_decay, double amplitude) {
    if (max_mode >= n / 2) throw std::invalid_argument("band limit must be < n/2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> fhat(pow_size(n, d), cplx{0, 0});
    std::vector<int> k(d, 0);
    // iterate modes in a fixed order for determinism
    for (std::size_t f = 0; f < fhat.size(); ++f) {
        std::size_t r = f;
        bool inside = true;
        int ksq = 0;
        for (int a = d - 1; a >= 0; --a) {
            k[a] = static_cast<int>(r % n) - n / 2;
            r /= n;
            ksq += k[a] * k[a];
            if (std::abs(k[a]) > max_mode) inside = false;
        }
        if (!inside) continue;
        const double w = std::exp(-spectral_decay * ksq);
        fhat[f] = cplx{gauss(rng) * w, gauss(rng) * w};
    }
    GridFunction g = inverse_transform(d, n, box_length, fhat);
    double rms = 0;
    for (const cplx& v : g.values) rms += v.real() * v.real();
    rms = std::sqrt(rms / g.size());
    const double scale = rms > 0 ? amplitude / rms : 0.0;
    for (cplx& v : g.values) v = v.real() * scale + offset;
    g.real_tag = true;
    return g;
}

// ---------------------------------------------------------------------------
// Snapshot IO
// ---------------------------------------------------------------------------

namespace {

void put_u64(std::ofstream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::ifstream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

} // namespace

void write_snapshot(const GridFunction& f, const std::string& path,
                    const std::string& note) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    put_u64(out, static_cast<std::uint64_t>(f.d));
    put_u64(out, static_cast<std::uint64_t>(f.n));
    std::uint64_t lbits;
    double L = f.box_length;
    std::memcpy(&lbits, &L, 8);
    put_u64(out, lbits);
    for (const cplx& v : f.values) {
        double re = v.real(), im = v.imag();
        std::uint64_t rb, ib;
        std::memcpy(&rb, &re, 8);
        std::memcpy(&ib, &im, 8);
        put_u64(out, rb);
        put_u64(out, ib);
    }
    out.close();

    nlohmann::json side;
    side["kind"] = "grid-snapshot";
    side["d"] = f.d;
    side["n"] = f.n;
    side["box_length"] = f.box_length;
    side["real_tag"] = f.real_tag;
    side["note"] = note;
    std::ofstream js(path + ".json");
    js << side.dump(2) << "\n";
}

GridFunction read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    int d = static_cast<int>(get_u64(in));
    int n = static_cast<int>(get_u64(in));
    std::uint64_t lbits = get_u64(in);
    double L;
    std::memcpy(&L, &lbits, 8);
    GridFunction g = make_grid(d, n, L);
    g.real_tag = false;
    for (cplx& v : g.values) {
        std::uint64_t rb = get_u64(in), ib = get_u64(in);
        double re, im;
        std::memcpy(&re, &rb, 8);
        std::memcpy(&im, &ib, 8);
        v = cplx{re, im};
    }
    if (!in) throw std::runtime_error("snapshot truncated: " + path);
    return g;
}

} // namespace bilab
