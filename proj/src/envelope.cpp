#include "fracmin/envelope.hpp"

#include <cmath>
#include <stdexcept>

#include "fracmin/rootfind.hpp"
#include "fracmin/trajectory.hpp"

namespace fracmin {

namespace {

constexpr int kMaxCurve = 500;
constexpr int kFirstBacktracking = 7;  // first n with xi_n'(1) < 0

double xi_of(int n, double t) { return evolve(t, n).xi; }
double eta_of(int n, double t) { return evolve(t, n).eta; }

// log xi_n and its two derivatives at t.
Jet2d log_xi(int n, double t) { return apply_log(evolve(seed(t), n).xi); }

}  // namespace

EnvelopeModel::EnvelopeModel(double tol) : tol_(tol) {}

double EnvelopeModel::xi(int n, double t) const { return xi_of(n, t); }
double EnvelopeModel::eta(int n, double t) const { return eta_of(n, t); }

void EnvelopeModel::ensure_curve(int n) const {
    if (n < 1 || n > kMaxCurve) throw std::domain_error("envelope: curve index out of range");
    if (static_cast<int>(cache_.size()) >= n && cache_[n - 1].x0 > 0.0) return;
    if (static_cast<int>(cache_.size()) < n) cache_.resize(n);
    CurveData& c = cache_[n - 1];
    if (c.x0 > 0.0) return;
    if (n < kFirstBacktracking) {
        c.t0 = 1.0;
    } else {
        const auto d1 = [&](double t) { return log_xi(n, t).d1; };
        const auto d2 = [&](double t) { return log_xi(n, t).d2; };
        c.t0 = newton_bisect(d1, d2, 1.0, 2.0, tol_);
    }
    c.x0 = xi_of(n, c.t0);
    if (n < kFirstBacktracking) {
        c.tl = 1.0;
        c.x_lo = c.x0;
    }
    if (n < kFirstBacktracking - 1) {
        c.has_right = true;
        c.tr = 2.0;
        c.x_hi = xi_of(n, 2.0);
    }
}

double EnvelopeModel::solve_branch(int n, double x, Branch branch) const {
    std::lock_guard<std::mutex> lock(mu_);
    ensure_curve(n);
    const CurveData& c = cache_[n - 1];
    if (x < c.x0 * (1.0 - 1e-9))
        throw std::domain_error("solve_branch: x below the curve minimum");
    const double lx = std::log(std::max(x, c.x0));
    if (branch == Branch::plus) {
        double hi = std::max(2.0, c.t0 + 1.0);
        while (xi_of(n, hi) < x) {
            hi *= 1.5;
            if (hi > 1e9) throw std::domain_error("solve_branch: x unreachable");
        }
        if (x <= c.x0) return c.t0;
        return newton_bisect([&](double t) { return log_xi(n, t).v - lx; },
                             [&](double t) { return log_xi(n, t).d1; }, c.t0, hi, tol_);
    }
    const double x_at_1 = xi_of(n, 1.0);
    if (n < kFirstBacktracking) {
        if (std::fabs(x - x_at_1) <= 1e-9 * x_at_1) return 1.0;
        throw std::domain_error("solve_branch: curve has no decreasing side for n < 7");
    }
    if (x > x_at_1 * (1.0 + 1e-12))
        throw std::domain_error("solve_branch: x above xi_n(1) on the minus side");
    if (x <= c.x0) return c.t0;
    if (x >= x_at_1) return 1.0;
    return newton_bisect([&](double t) { return log_xi(n, t).v - lx; },
                         [&](double t) { return log_xi(n, t).d1; }, 1.0, c.t0, tol_);
}

namespace {

// Plus-branch parameter without needing the model instance (used inside the
// crossing fallback where the cache lock is already held).
double plus_param(int n, double t0, double x, double tol) {
    double hi = std::max(2.0, t0 + 1.0);
    while (xi_of(n, hi) < x) hi *= 1.5;
    if (x <= xi_of(n, t0)) return t0;
    const double lx = std::log(x);
    return newton_bisect([&](double t) { return log_xi(n, t).v - lx; },
                         [&](double t) { return log_xi(n, t).d1; }, t0, hi, tol);
}

}  // namespace

void EnvelopeModel::solve_crossing(int n) const {
    ensure_curve(n);
    ensure_curve(n - 1);
    CurveData& cur = cache_[n - 1];
    CurveData& prev = cache_[n - 2];

    double a, b;
    if (n == kFirstBacktracking) {
        a = 0.5 * (cur.t0 + 2.0);
        b = 1.99;
    } else {
        a = cache_[n - 2].tl;
        b = cache_[n - 3].tr;
    }

    bool converged = false;
    for (int it = 0; it < 60; ++it) {
        const auto sa = evolve(seed(a), n);
        const auto sb = evolve(seed(b), n - 1);
        const auto la = apply_log(sa.xi), lb = apply_log(sb.xi);
        const double r1 = la.v - lb.v;
        const double r2 = sa.eta.v - sb.eta.v;
        const double j11 = la.d1, j12 = -lb.d1;
        const double j21 = sa.eta.d1, j22 = -sb.eta.d1;
        const double det = j11 * j22 - j12 * j21;
        if (std::fabs(det) < 1e-14) break;
        const double da = (r1 * j22 - r2 * j12) / det;
        const double db = (j11 * r2 - j21 * r1) / det;
        a -= da;
        b -= db;
        if (!(a > cur.t0 && a < 2.0 && b > prev.t0 && b < 2.2)) break;
        if (std::fabs(da) + std::fabs(db) < tol_) {
            converged = true;
            break;
        }
    }

    if (!converged) {
        const double x_hi = xi_of(n - 1, 2.0) * (1.0 - 1e-14);
        const auto diff = [&](double lx) {
            const double x = std::exp(lx);
            return eta_of(n, plus_param(n, cur.t0, x, tol_)) -
                   eta_of(n - 1, plus_param(n - 1, prev.t0, x, tol_));
        };
        const double lx =
            bisect(diff, std::log(cur.x0), std::log(x_hi), 1e-14, 200);
        const double x = std::exp(lx);
        a = plus_param(n, cur.t0, x, tol_);
        b = plus_param(n - 1, prev.t0, x, tol_);
    }

    const double xc = xi_of(n, a);
    cur.tl = a;
    cur.x_lo = xc;
    prev.has_right = true;
    prev.tr = b;
    prev.x_hi = xc;
}

void EnvelopeModel::ensure_right(int n) const {
    ensure_curve(n);
    if (cache_[n - 1].has_right) return;
    for (int k = kFirstBacktracking; k <= n + 1; ++k) {
        ensure_curve(k);
        if (!(k >= 2 && cache_[k - 2].has_right)) solve_crossing(k);
    }
}

const EnvelopeModel::CurveData& EnvelopeModel::curve(int n) const {
    ensure_curve(n);
    if (n >= kFirstBacktracking && cache_[n - 1].x_lo == 0.0) ensure_right(n - 1);
    return cache_[n - 1];
}

const EnvelopeModel::CurveData& EnvelopeModel::curve_with_right(int n) const {
    curve(n);
    ensure_right(n);
    return cache_[n - 1];
}

int EnvelopeModel::locate(double big_x) const {
    for (int n = 1; n <= kMaxCurve; ++n) {
        const CurveData& c = curve_with_right(n);
        if (big_x <= c.x_hi) return n;
    }
    throw std::domain_error("envelope: x beyond supported range");
}

SpecialPoints EnvelopeModel::special_points(int n) const {
    std::lock_guard<std::mutex> lock(mu_);
    const CurveData& c = curve_with_right(n);
    return {n, c.t0, c.x0, c.tl, c.tr, c.x_lo, c.x_hi};
}

double EnvelopeModel::envelope_value(double x) const {
    if (x <= 1.0) return x;
    std::lock_guard<std::mutex> lock(mu_);
    const double big_x = x + 1.0;
    const int n = locate(big_x);
    const double t = plus_param(n, cache_[n - 1].t0, big_x, tol_);
    return eta_of(n, t) - 1.0;
}

int EnvelopeModel::critical_index(double x) const {
    if (x <= 1.0) return 1;
    std::lock_guard<std::mutex> lock(mu_);
    return locate(x + 1.0);
}

}  // namespace fracmin
