#include "bilab/spherical_avg.hpp"
#include "bilab/pairwise.hpp"

#include <cmath>
#include <stdexcept>

namespace bilab {

namespace {

inline double sample_field(const RealField& f, const double* x, bool absolute) {
    const double v = f.sample(x);
    return absolute ? std::abs(v) : v;
}

// innermost factor: sphere average of the last field at radius s
double sphere_factor(const RealField& f, const double* x, double s,
                     const SphereRule& sphere, bool absolute) {
    const int d = f.d;
    return pairwise_sum_indexed<double>(0, sphere.size(), [&](std::size_t i) {
        const double* z = sphere.nodes.data() + i * static_cast<std::size_t>(d);
        double p[3];
        for (int a = 0; a < d; ++a) p[a] = x[a] - s * z[a];
        return sphere.weights[i] * sample_field(f, p, absolute);
    });
}

// One slicing level: integrate fields[level] over t * B^d and hand the
// reduced radius t sqrt(1-|y|^2) to the remaining factors.  The reduced
// radius is constant on each radial shell, so the inner factor is computed
// once per shell (lazily: a shell whose outer samples all vanish never
// evaluates it).
double sliced_core(const RealField* const* fs, std::size_t count, std::size_t level,
                   const double* x, double t, std::span<const BallRule> balls,
                   const SphereRule& sphere, bool absolute) {
    if (level + 1 == count)
        return sphere_factor(*fs[level], x, t, sphere, absolute);
    const BallRule& ball = balls[level];
    const RealField& field = *fs[level];
    const int d = field.d;
    const std::size_t shell = ball.shell_size;
    std::vector<double> terms(ball.size());
    for (std::size_t i = 0; i < ball.shell_radii.size(); ++i) {
        const double r = ball.shell_radii[i];
        const double s = t * std::sqrt(std::max(0.0, 1.0 - r * r));
        double inner = 0;
        bool have_inner = false;  // computed on first nonzero outer sample
        for (std::size_t j = i * shell; j < (i + 1) * shell; ++j) {
            const double* y = ball.nodes.data() + j * static_cast<std::size_t>(d);
            double p[3];
            for (int a = 0; a < d; ++a) p[a] = x[a] - t * y[a];
            const double outer = sample_field(field, p, absolute);
            if (outer == 0.0) {
                terms[j] = 0.0;  // term is an exact zero
                continue;
            }
            if (!have_inner) {
                inner = sliced_core(fs, count, level + 1, x, s, balls, sphere, absolute);
                have_inner = true;
            }
            terms[j] = ball.weights[j] * outer * inner;
        }
    }
    return pairwise_sum<double>(terms.data(), terms.size());
}

void require_same_geometry(const RealField& a, const RealField& b) {
    if (a.d != b.d || a.n != b.n || a.box_length != b.box_length)
        throw std::invalid_argument("averages: fields must share a grid");
}

} // namespace

double direct_bilinear_average(const RealField& f, const RealField& g,
                               std::span<const double> x, double t,
                               const SphereRule& rule_2d, bool absolute) {
    require_same_geometry(f, g);
    const int d = f.d;
    if (rule_2d.k != 2 * d)
        throw std::invalid_argument("direct_bilinear_average: rule must live on S^{2d-1}");
    return pairwise_sum_indexed<double>(0, rule_2d.size(), [&](std::size_t i) {
        const double* node = rule_2d.nodes.data() + i * static_cast<std::size_t>(2 * d);
        double py[3], pz[3];
        for (int a = 0; a < d; ++a) {
            py[a] = x[a] - t * node[a];
            pz[a] = x[a] - t * node[d + a];
        }
        return rule_2d.weights[i] * sample_field(f, py, absolute) *
               sample_field(g, pz, absolute);
    });
}

double sliced_bilinear_average(const RealField& f, const RealField& g,
                               std::span<const double> x, double t,
                               const BallRule& ball, const SphereRule& sphere,
                               bool absolute) {
    require_same_geometry(f, g);
    const RealField* fs[2] = {&f, &g};
    return sliced_core(fs, 2, 0, x.data(), t, {&ball, 1}, sphere, absolute);
}

double multilinear_average(std::span<const RealField> fs,
                           std::span<const double> x, double t,
                           std::span<const BallRule> balls,
                           const SphereRule& sphere, bool absolute) {
    if (fs.size() < 2) throw std::invalid_argument("multilinear_average: k >= 2");
    if (balls.size() + 1 != fs.size())
        throw std::invalid_argument("multilinear_average: need k-1 ball rules");
    std::vector<const RealField*> ptrs(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i + 1 < fs.size()) require_same_geometry(fs[i], fs[i + 1]);
        ptrs[i] = &fs[i];
    }
    return sliced_core(ptrs.data(), ptrs.size(), 0, x.data(), t, balls, sphere,
                       absolute);
}

double linear_spherical_average(const RealField& f, std::span<const double> x,
                                double t, const SphereRule& sphere, bool absolute) {
    if (sphere.k != f.d)
        throw std::invalid_argument("linear_spherical_average: rule must live on S^{d-1}");
    return sphere_factor(f, x.data(), t, sphere, absolute);
}

MultilinearRules multilinear_rules(int k, int d, int order) {
    MultilinearRules r;
    r.sphere = sphere_rule(d, order);
    for (int level = 0; level + 1 < k; ++level) {
        const double exponent = 0.5 * ((k - 1 - level) * d - 2);
        r.balls.push_back(ball_rule_weighted(d, order, exponent));
    }
    return r;
}

double direct_bilinear_average(const GridFunction& f, const GridFunction& g,
                               std::span<const double> x, double t,
                               const SphereRule& rule_2d, bool absolute) {
    return direct_bilinear_average(real_field(f, false), real_field(g, false), x, t,
                                   rule_2d, absolute);
}

double sliced_bilinear_average(const GridFunction& f, const GridFunction& g,
                               std::span<const double> x, double t,
                               const BallRule& ball, const SphereRule& sphere,
                               bool absolute) {
    return sliced_bilinear_average(real_field(f, false), real_field(g, false), x, t,
                                   ball, sphere, absolute);
}

double linear_spherical_average(const GridFunction& f, std::span<const double> x,
                                double t, const SphereRule& sphere, bool absolute) {
    return linear_spherical_average(real_field(f, false), x, t, sphere, absolute);
}

void check_no_wrap(const RealField& f, std::span<const double> x, double t) {
    // Read set is contained in B_inf(x, t); its wrapped images sit at sup-norm
    // distance >= L - (|x|_inf + t) from the origin.  They must stay clear of
    // the support (one interpolation stencil of margin).
    double xinf = 0;
    for (int a = 0; a < f.d; ++a) xinf = std::max(xinf, std::abs(x[a]));
    const double reach = xinf + t;
    const double supp = f.support_radius();
    if (reach + supp + 2.0 * f.h() > f.box_length)
        throw std::domain_error("average: wrap-around violation (box too small)");
}

} // namespace bilab
