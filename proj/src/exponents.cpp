#include "bilab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bilab {

std::string region_name(Region r) {
    switch (r) {
        case Region::Bounded: return "Bounded";
        case Region::Unbounded: return "Unbounded";
        case Region::WeakLorentz: return "WeakLorentz";
        case Region::Open: return "Open";
    }
    return "?";
}

double alpha_critical(double up, int d) {
    if (up < 0.0 || up > 1.0) throw std::invalid_argument("alpha_critical: up in [0,1]");
    return std::max(d * std::abs(up - 0.5) - 0.5, 0.0);
}

namespace {

// alpha(p) as an exact rational for up in [0, 1/2] (there the positive part
// is d(1/2 - up) - 1/2 clipped at zero)
Rat alpha_critical_rat(Rat up, int d) {
    Rat v = Rat(d) * (Rat(1, 2) - up) - Rat(1, 2);
    if (up > Rat(1, 2)) v = Rat(d) * (up - Rat(1, 2)) - Rat(1, 2);
    return v < Rat(0) ? Rat(0) : v;
}

} // namespace

AlphaStar alpha_star(Rat up, Rat uq, Rat nu, int d) {
    if (up < Rat(0) || up > Rat(1, 2) || uq < Rat(0) || uq > Rat(1, 2))
        throw std::invalid_argument("alpha_star: up, uq in [0, 1/2]");
    if (nu < Rat(0) || nu > Rat(d - 1, 2 * d))
        throw std::invalid_argument("alpha_star: nu out of range");

    const bool in_d1 = up <= nu && uq <= nu;
    const bool in_d2 = up >= nu && uq >= nu;
    const Rat alpha_nu = alpha_critical_rat(nu, d);

    auto d1_value = [&]() { return (Rat(d) * (Rat(1) - up - uq)).value(); };
    auto d2_value = [&]() {
        // 1 + 2(1 - up - uq)/(1 - 2 nu) * alpha(1/nu)
        const Rat q = Rat(2) * (Rat(1) - up - uq) / (Rat(1) - Rat(2) * nu);
        return (Rat(1) + q * alpha_nu).value();
    };

    AlphaStar out;
    if (in_d1 && in_d2) {
        out.tie = true;
        out.region = "D1&D2";
        out.value_d1 = d1_value();
        out.value_d2 = d2_value();
        out.value = out.value_d1;
        return out;
    }
    if (in_d1) {
        out.region = "D1";
        out.value = d1_value();
        return out;
    }
    if (in_d2) {
        out.region = "D2";
        out.value = d2_value();
        return out;
    }
    // D3: one strictly below nu, the other strictly above
    out.region = "D3";
    const Rat au = alpha_critical_rat(up, d);
    const Rat av = alpha_critical_rat(uq, d);
    const Rat amax = au > av ? au : av;
    const Rat su = Rat(1) - Rat(2) * up;  // (p-2)/p in reciprocal form
    const Rat sv = Rat(1) - Rat(2) * uq;
    const Rat smin = su < sv ? su : sv;
    out.value = (Rat(1) + amax + alpha_nu * smin / (Rat(1) - Rat(2) * nu)).value();
    return out;
}

Rat p_s(int d) {
    if (d < 2) throw std::invalid_argument("p_s: d >= 2");
    const int k = d % 3;
    const int denom = 4 * d - 6 - k;
    const Rat second(2 * (d + 2), d);
    if (denom <= 0) return second;  // p0 diverges
    const Rat p0 = Rat(2) + Rat(12, denom);
    return p0 < second ? p0 : second;
}

// ---------------------------------------------------------------------------
// Global classifier (Theorem 1.1)
// ---------------------------------------------------------------------------

RegionVerdict global_region(int d, Rat up, Rat uq, Rat ur) {
    if (up < Rat(0) || up > Rat(1) || uq < Rat(0) || uq > Rat(1) || ur < Rat(0))
        throw std::invalid_argument("global_region: reciprocals out of range");
    RegionVerdict v;
    v.citation = "bilinear spherical maximal theorem";

    if (up + uq != ur) {
        v.status = Region::Unbounded;
        v.case_tag = "holder";
        v.citation = "scaling necessity";
        return v;
    }
    const bool excluded = (up == Rat(1) && uq == Rat(0) && ur == Rat(1)) ||
                          (up == Rat(0) && uq == Rat(1) && ur == Rat(1));
    if (excluded) {
        // strong bound fails at (1,inf,1); the Lorentz estimate (a) survives
        v.status = Region::Unbounded;
        v.case_tag = "a";
        v.lorentz_note = "weak case (a) holds: u = t = inf, s = 1";
        return v;
    }
    const Rat critical(2 * d - 1, d);
    if (ur > critical) {
        v.status = Region::Unbounded;
        v.case_tag = "r<=d/(2d-1)";
        return v;
    }
    if (ur == critical) {
        if (d == 2) {
            // critical Lorentz line left unresolved in the plane
            v.status = Region::Open;
            v.case_tag = "critical-line";
            return v;
        }
        const Rat q_idx(d - 1, d);
        if ((up == Rat(1) && uq == q_idx) || (uq == Rat(1) && up == q_idx)) {
            v.status = Region::WeakLorentz;
            v.case_tag = "b";
            v.lorentz_note = "u = inf, s = t = 1";
            return v;
        }
        v.status = Region::WeakLorentz;
        v.case_tag = "c";
        v.lorentz_note = "u = inf; 1/s + 1/t = (2d-1)/d, s, t > 0";
        return v;
    }
    v.status = Region::Bounded;
    return v;
}

// ---------------------------------------------------------------------------
// Localized classifier (sufficiency + necessity + Open band)
// ---------------------------------------------------------------------------

RegionVerdict localized_region(int d, Rat up, Rat uq, Rat ur) {
    if (up < Rat(0) || up > Rat(1) || uq < Rat(0) || uq > Rat(1) || ur < Rat(0))
        throw std::invalid_argument("localized_region: reciprocals out of range");
    RegionVerdict v;
    v.citation = "localized bilinear maximal region";
    const Rat S = up + uq;
    const Rat critical(2 * d - 1, d);
    const Rat necessity_cap = std::min(critical, Rat(1) + Rat(d) * ur);

    if (S < ur || S > necessity_cap) {
        v.status = Region::Unbounded;
        v.case_tag = S < ur ? "translation" : "necessity";
        return v;
    }

    bool sufficient = false;
    if (d == 2) {
        const bool r_ok = ur < Rat(3, 2);  // r > 2/3
        const Rat cap = std::min(Rat(1) + ur, Rat(3, 2));
        sufficient = r_ok && (S < cap ||
                              (S == Rat(1) + ur && ur < Rat(1, 2)));  // r > 2
    } else {
        const bool r_ok = ur < critical;
        const Rat cap = std::min({Rat(1) + Rat(d) * ur, critical,
                                  ur + Rat(2 * (d - 1), d)});
        sufficient = r_ok && (S < cap ||
                              (S == Rat(1) + Rat(d) * ur && ur == Rat(0)));  // r = inf
    }
    v.status = sufficient ? Region::Bounded : Region::Open;
    if (!sufficient) v.case_tag = "between-sufficiency-and-necessity";
    return v;
}

// ---------------------------------------------------------------------------
// Localized linear spherical region (the closed polygon)
// ---------------------------------------------------------------------------

namespace {

struct RatPoint { Rat x, y; };

Rat cross(const RatPoint& o, const RatPoint& a, const RatPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

} // namespace

RegionVerdict delta_region(int d, Rat u, Rat v) {
    if (u < Rat(0) || u > Rat(1) || v < Rat(0) || v > Rat(1))
        throw std::invalid_argument("delta_region: reciprocals out of range");
    RegionVerdict out;
    out.citation = "localized linear spherical region";

    const RatPoint v1{Rat(0), Rat(0)};
    const RatPoint v2{Rat(d - 1, d), Rat(d - 1, d)};
    const RatPoint v3{Rat(d - 1, d), Rat(1, d)};
    const RatPoint v4{Rat(d * d - d, d * d + 1), Rat(d - 1, d * d + 1)};
    const RatPoint p{u, v};

    auto at = [&](const RatPoint& q) { return u == q.x && v == q.y; };
    if (at(v4) || (d >= 3 && (at(v2) || at(v3)))) {
        out.status = Region::WeakLorentz;
        out.case_tag = at(v4) ? "V4" : (at(v2) ? "V2" : "V3");
        out.lorentz_note = "restricted weak type";
        return out;
    }
    if (d == 2 && at(v2)) {
        out.status = Region::Unbounded;
        out.case_tag = "V2";
        return out;
    }

    // convex polygon V1 V2 V3 V4 traversed clockwise; inside means every
    // cross product is <= 0 (V2 == V3 collapses the quad to a triangle at d=2)
    std::vector<RatPoint> poly = {v1, v2, v3, v4};
    bool inside = true;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const RatPoint& a = poly[i];
        const RatPoint& b = poly[(i + 1) % poly.size()];
        if (a.x == b.x && a.y == b.y) continue;
        if (cross(a, b, p) > Rat(0)) { inside = false; break; }
    }
    out.status = inside ? Region::Bounded : Region::Unbounded;
    return out;
}

RegionVerdict br_maximal_necessity(double alpha, Rat ur, int d) {
    RegionVerdict v;
    v.citation = "maximal bilinear Bochner-Riesz necessity";
    const double threshold = 0.5 * (2 * d - 1) * (ur.value() - 1.0);
    if (alpha < threshold) {
        v.status = Region::Unbounded;
        v.case_tag = "alpha<(2d-1)/(2r)-(2d-1)/2";
    } else {
        v.status = Region::Open;
    }
    return v;
}

double sufficient_alpha(Rat up, Rat uq, int d) {
    const Rat nu = Rat(1) / p_s(d);
    const AlphaStar a = alpha_star(up, uq, nu, d);
    return std::min(a.value, d - 0.5);
}

RegionVerdict global_region(const ExponentPoint& e) {
    return global_region(e.d, Rat::from_double(e.up), Rat::from_double(e.uq),
                         Rat::from_double(e.ur));
}

RegionVerdict localized_region(const ExponentPoint& e) {
    return localized_region(e.d, Rat::from_double(e.up), Rat::from_double(e.uq),
                            Rat::from_double(e.ur));
}

} // namespace bilab
