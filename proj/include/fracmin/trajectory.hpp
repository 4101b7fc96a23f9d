#pragma once

#include <cmath>
#include <stdexcept>

#include "fracmin/jet.hpp"

namespace fracmin {

// State of the extremal-trajectory recurrence after n steps:
//   alpha_{n+1} = alpha_n + 1/xi_n
//   xi_{n+1}    = alpha_{n+1} * xi_n
//   eta_{n+1}   = eta_n + alpha_n
// started from (alpha, xi, eta) = (t - 1, 1, 1) at n = 0, so that
// alpha_1 = t, xi_1 = t, eta_1 = t and xi_2 = t^2 + 1, eta_2 = 2t.
template <class S>
struct TrajectoryState {
    S alpha{};
    S xi{};
    S eta{};
};

template <class S>
struct scalar_traits {
    static S from_real(double x) { return S(x); }
};

template <class U>
struct scalar_traits<Jet2<U>> {
    static Jet2<U> from_real(double x) {
        return {scalar_traits<U>::from_real(x), U{}, U{}};
    }
};

template <class S>
inline constexpr bool is_jet_v = false;
template <class U>
inline constexpr bool is_jet_v<Jet2<U>> = true;

template <class S>
S generic_log(const S& x) {
    if constexpr (is_jet_v<S>) {
        return apply_log(x);
    } else {
        using std::log;
        return log(x);
    }
}

template <class S>
void trajectory_step(TrajectoryState<S>& s) {
    if (value_mag(s.xi) < 1e-300)
        throw std::runtime_error("trajectory: xi vanished, singular trajectory");
    const S one = scalar_traits<S>::from_real(1.0);
    const S a_next = s.alpha + one / s.xi;
    s.eta = s.eta + s.alpha;
    s.xi = a_next * s.xi;
    s.alpha = a_next;
}

template <class S>
TrajectoryState<S> initial_state(const S& t) {
    const S one = scalar_traits<S>::from_real(1.0);
    return {t - one, one, one};
}

template <class S>
TrajectoryState<S> evolve(const S& t, int n) {
    if (n < 0) throw std::invalid_argument("evolve: negative step count");
    TrajectoryState<S> s = initial_state(t);
    for (int i = 0; i < n; ++i) trajectory_step(s);
    return s;
}

// Upper bound on sum_{j>=n} 1/|xi_j| given |xi_{n0}| at n0 <= n, assuming
// every later ratio |alpha_j| exceeds a (so |xi| grows geometrically).
inline double tail_bound(double xi_n0_mag, int n0, int n, double a) {
    return (1.0 / xi_n0_mag) * std::pow(a, n0 - n) / (1.0 - 1.0 / a);
}

namespace detail {

inline constexpr int kTailBase = 4;       // bound anchored at xi_4
inline constexpr double kTailRate = 2.0;  // alpha_j >= 2 for j >= 2 once t >= 1
inline constexpr int kMaxSteps = 200;
inline constexpr int kJetExtraSteps = 20;

template <class S>
void check_real_domain(const S& t) {
    const double tv = value_mag(t);
    if (!(tv >= 1.0 - 1e-9 && tv <= 2.0 + 1e-9))
        throw std::domain_error("trajectory limit: t outside [1, 2]");
}

// Steps needed so the truncation tail drops below tol, plus slack for
// derivative components when S carries a jet.
template <class S>
int limit_steps(double xi4_mag, double tol) {
    int n = kTailBase;
    while (n < kMaxSteps && tail_bound(xi4_mag, kTailBase, n, kTailRate) > tol) ++n;
    if (n >= kMaxSteps)
        throw std::runtime_error("trajectory limit: tail bound did not reach tolerance");
    if constexpr (is_jet_v<S>) n += kJetExtraSteps;
    return n;
}

template <class S>
struct LimitData {
    S alpha_inf;
    int steps;
    double xi4_mag;
};

template <class S>
LimitData<S> alpha_limit_data(const S& t, double tol) {
    check_real_domain(t);
    TrajectoryState<S> s = initial_state(t);
    for (int i = 0; i < kTailBase; ++i) trajectory_step(s);
    const double xi4 = value_mag(s.xi);
    const double cond = std::sqrt(value_mag(s.alpha)) - 1.0 / std::sqrt(xi4);
    if (!(cond > 1.0))
        throw std::runtime_error("trajectory limit: contraction condition failed");
    const int n = limit_steps<S>(xi4, tol);
    for (int i = kTailBase; i < n; ++i) trajectory_step(s);
    return {s.alpha, n, xi4};
}

}  // namespace detail

// Limit of alpha_n(t) for t in [1, 2]; absolute error below tol.
template <class S>
S alpha_inf(const S& t, double tol = 1e-12) {
    return detail::alpha_limit_data(t, tol).alpha_inf;
}

// phi(t) = sum_{j>=1} log(alpha_j(t)/alpha_inf(t)); negative on [1, 2].
// Appears in the curve asymptotics log xi_n = n log alpha_inf + phi + O(2^-n).
template <class S>
S phi(const S& t, double tol = 1e-12) {
    const auto lim = detail::alpha_limit_data(t, tol * 1e-3);
    TrajectoryState<S> s = initial_state(t);
    S acc = scalar_traits<S>::from_real(0.0);
    for (int j = 1; j <= lim.steps; ++j) {
        trajectory_step(s);
        acc = acc + generic_log(s.alpha / lim.alpha_inf);
    }
    return acc;
}

// psi(t) = t - alpha_inf(t) - sum_{j>=1} (alpha_inf - alpha_j); appears in
// eta_n = n alpha_inf + psi + O(2^-n).
template <class S>
S psi(const S& t, double tol = 1e-12) {
    const auto lim = detail::alpha_limit_data(t, tol * 1e-3);
    TrajectoryState<S> s = initial_state(t);
    S acc = t - lim.alpha_inf;
    for (int j = 1; j <= lim.steps; ++j) {
        trajectory_step(s);
        acc = acc - (lim.alpha_inf - s.alpha);
    }
    return acc;
}

// Residual of the summation-by-parts identity
//   sum_{j>=1} delta_j alpha_j'/alpha_j = 1 - alpha_inf',
// which holds for every t in [1, 2]; returns |lhs - rhs|.
double abel_identity_residual(double t, double tol = 1e-12);

// Largest relative mismatch in (alpha, xi, eta)_n(1) = (alpha, xi, eta)_{n-1}(2).
double shift_identity_check(int n);

// Residual of eta_n'(t) = xi_n'(t)/xi_{n-1}(t), relative to |eta_n'(t)|.
double eta_derivative_residual(int n, double t);

}  // namespace fracmin
