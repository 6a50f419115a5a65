#ifndef BILAB_RATIONAL_HPP
#define BILAB_RATIONAL_HPP

// Small exact rational type for the exponent classifiers.  Keeping every
// region test in integer arithmetic removes float misclassification on the
// boundary lines, which is where all the interesting verdicts live.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bilab {

struct Rat {
    long long n = 0;
    long long d = 1;

    Rat() = default;
    Rat(long long num) : n(num), d(1) {}
    Rat(long long num, long long den) : n(num), d(den) { normalize(); }

    void normalize() {
        if (d == 0) throw std::invalid_argument("Rat: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        const long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
    }

    double value() const { return static_cast<double>(n) / static_cast<double>(d); }

    friend Rat operator+(Rat a, Rat b) { return Rat(a.n * b.d + b.n * a.d, a.d * b.d); }
    friend Rat operator-(Rat a, Rat b) { return Rat(a.n * b.d - b.n * a.d, a.d * b.d); }
    friend Rat operator*(Rat a, Rat b) { return Rat(a.n * b.n, a.d * b.d); }
    friend Rat operator/(Rat a, Rat b) {
        if (b.n == 0) throw std::invalid_argument("Rat: division by zero");
        return Rat(a.n * b.d, a.d * b.n);
    }
    friend bool operator==(Rat a, Rat b) { return a.n == b.n && a.d == b.d; }
    friend bool operator!=(Rat a, Rat b) { return !(a == b); }
    friend bool operator<(Rat a, Rat b) {
        return static_cast<__int128>(a.n) * b.d < static_cast<__int128>(b.n) * a.d;
    }
    friend bool operator<=(Rat a, Rat b) { return a < b || a == b; }
    friend bool operator>(Rat a, Rat b) { return b < a; }
    friend bool operator>=(Rat a, Rat b) { return b <= a; }

    // "3/5", "2", or "inf" (infinity parses to the zero reciprocal by callers)
    static Rat parse(const std::string& s) {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

    // snap a double to a small rational (continued fractions); throws if no
    // denominator <= max_den approximates within 1e-9
    static Rat from_double(double x, long long max_den = 1000000);

    std::string str() const {
        if (d == 1) return std::to_string(n);
        return std::to_string(n) + "/" + std::to_string(d);
    }
};

inline Rat Rat::from_double(double x, long long max_den) {
    // continued fraction convergents
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(v);
        const long long a = static_cast<long long>(fl);
        const long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double rem = v - fl;
        if (rem < 1e-15) break;
        v = 1.0 / rem;
    }
    if (q1 == 0) throw std::invalid_argument("Rat::from_double failed");
    Rat r(p1, q1);
    if (std::abs(r.value() - x) > 1e-9)
        throw std::invalid_argument("Rat::from_double: not a small rational");
    return r;
}

} // namespace bilab

#endif
