#pragma once

#include <functional>

#include "fracmin/jet.hpp"

namespace fracmin {

using JetFn = std::function<Jet2d(const Jet2d&)>;

// Curve family x = p0(t)*n + q0(t) + r0(t)/n, y = p1(t)*n + q1(t) + r1(t)/n
// on t in [t_lo, t_hi]; the envelope in n behaves like
//   f(u) = a0*u + a1 + (a2 + a3*<(u - q0(t0))/p0(t0)>^2)/u + O(1/u^2)
// where t0 is the interior minimum of beta = p1/p0.
struct FamilySpec {
    JetFn p0, q0, r0, p1, q1, r1;
    double t_lo = 1.0;
    double t_hi = 2.0;
};

struct EnvelopeAsymptotics {
    double t0 = 0.0;    // argmin of beta
    double b0 = 0.0;    // beta(t0)
    double b2 = 0.0;    // beta''(t0)
    double p0_t0 = 0.0, p0d_t0 = 0.0, q0_t0 = 0.0;
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    double delta0 = 0.0;  // p0*r1 - p1*r0 at t0
};

// Distance to the nearest integer, in [0, 0.5]; ties round half to even.
double nearest_int_dist(double x);

// Locates the interior minimum of beta and assembles the envelope
// coefficients. Throws if the family invariants fail (p0, p1, p0' positive),
// beta has no interior sign change of its derivative, the minimum sits on an
// endpoint, or the curvature is degenerate.
EnvelopeAsymptotics analyze(const FamilySpec& fam);

double predict(const EnvelopeAsymptotics& c, double u);

// Exact envelope by scanning curves n in [n_lo, n_hi]: solves x(n, t) = u
// for every root in [t_lo, t_hi] and minimizes y over them.
double brute_force_envelope(const std::function<double(int, double)>& x_of,
                            const std::function<double(int, double)>& y_of,
                            int n_lo, int n_hi, double u, double t_lo,
                            double t_hi, int grid = 2001);

// The trajectory family (log xi_n, eta_n) on an interval right of the
// alpha_inf minimum, and the power-mean family (n*t, n*e^t) whose envelope
// is min_n n*x^{1/n}.
FamilySpec family_main(double tol = 1e-12);
FamilySpec family_am_gm();

struct MainConstants {
    double t_a = 0.0, t_o = 0.0, t_b = 0.0;
    double alpha_at_1 = 0.0, alpha_at_to = 0.0, alpha_at_tb = 0.0;
    double phi_tb = 0.0, psi_tb = 0.0, zeta_tb = 0.0;
    double big_a = 0.0;  // 1 - zeta(t_b)
    double small_b = 0.0;  // -phi(t_b)
    double beta2_tb = 0.0;
};

MainConstants compute_main_constants(double tol = 1e-12);

}  // namespace fracmin
