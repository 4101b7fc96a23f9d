#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>

namespace fracmin {

// Forward-mode jet carrying value, first derivative and raw second
// derivative (d2 is f'', not the halved Taylor coefficient).
template <class S>
struct Jet2 {
    S v{};
    S d1{};
    S d2{};
};

using Jet2d = Jet2<double>;
using Jet2c = Jet2<std::complex<double>>;

template <class S>
constexpr Jet2<S> seed(S t) {
    return {t, S(1), S(0)};
}

inline Jet2d seed(double t) { return Jet2d{t, 1.0, 0.0}; }

template <class S>
constexpr Jet2<S> constant(S c) {
    return {c, S(0), S(0)};
}

template <class S>
constexpr Jet2<S> operator+(const Jet2<S>& a, const Jet2<S>& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

template <class S>
constexpr Jet2<S> operator-(const Jet2<S>& a, const Jet2<S>& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

template <class S>
constexpr Jet2<S> operator-(const Jet2<S>& a) {
    return {-a.v, -a.d1, -a.d2};
}

template <class S>
constexpr Jet2<S> operator*(const Jet2<S>& a, const Jet2<S>& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + S(2) * a.d1 * b.d1 + a.v * b.d2};
}

template <class S>
constexpr Jet2<S> operator/(const Jet2<S>& a, const Jet2<S>& b) {
    const S q = a.v / b.v;
    const S q1 = (a.d1 - q * b.d1) / b.v;
    const S q2 = (a.d2 - q * b.d2 - S(2) * q1 * b.d1) / b.v;
    return {q, q1, q2};
}

template <class S>
constexpr Jet2<S> operator+(const Jet2<S>& a, S c) { return a + constant(c); }
template <class S>
constexpr Jet2<S> operator+(S c, const Jet2<S>& a) { return constant(c) + a; }
template <class S>
constexpr Jet2<S> operator-(const Jet2<S>& a, S c) { return a - constant(c); }
template <class S>
constexpr Jet2<S> operator-(S c, const Jet2<S>& a) { return constant(c) - a; }
template <class S>
constexpr Jet2<S> operator*(const Jet2<S>& a, S c) { return {a.v * c, a.d1 * c, a.d2 * c}; }
template <class S>
constexpr Jet2<S> operator*(S c, const Jet2<S>& a) { return a * c; }
template <class S>
constexpr Jet2<S> operator/(const Jet2<S>& a, S c) { return {a.v / c, a.d1 / c, a.d2 / c}; }
template <class S>
constexpr Jet2<S> operator/(S c, const Jet2<S>& a) { return constant(c) / a; }

template <class S>
Jet2<S> apply_log(const Jet2<S>& x) {
    if constexpr (std::is_floating_point_v<S>) {
        if (!(x.v > S(0))) throw std::domain_error("apply_log: nonpositive value");
    }
    using std::log;
    const S l1 = x.d1 / x.v;
    return {log(x.v), l1, (x.d2 * x.v - x.d1 * x.d1) / (x.v * x.v)};
}

template <class S>
Jet2<S> apply_exp(const Jet2<S>& x) {
    using std::exp;
    const S e = exp(x.v);
    return {e, e * x.d1, e * (x.d2 + x.d1 * x.d1)};
}

template <class S>
Jet2<S> apply_sqrt(const Jet2<S>& x) {
    if constexpr (std::is_floating_point_v<S>) {
        if (!(x.v > S(0))) throw std::domain_error("apply_sqrt: nonpositive value");
    }
    using std::sqrt;
    const S r = sqrt(x.v);
    const S r1 = x.d1 / (S(2) * r);
    return {r, r1, (x.d2 - S(2) * r1 * r1) / (S(2) * r)};
}

// Magnitude of the value slot, for convergence and singularity tests.
template <class S>
double value_mag(const S& x) {
    return std::abs(x);
}

template <class S>
double value_mag(const Jet2<S>& x) {
    return std::abs(x.v);
}

}  // namespace fracmin
