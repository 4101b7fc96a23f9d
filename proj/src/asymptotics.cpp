#include "fracmin/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fracmin/rootfind.hpp"
#include "fracmin/trajectory.hpp"

namespace fracmin {
namespace {

Jet2d beta_jet(const FamilySpec& fam, double t) {
    const Jet2d s = seed(t);
    return fam.p1(s) / fam.p0(s);
}

}  // namespace

double nearest_int_dist(double x) {
    double d = std::fabs(x - std::nearbyint(x));
    return d > 0.5 ? 0.5 : d;
}

EnvelopeAsymptotics analyze(const FamilySpec& fam) {
    if (!(fam.t_hi > fam.t_lo)) {
        throw std::invalid_argument("analyze: empty parameter interval");
    }
    const int kGrid = 201;
    const double span = fam.t_hi - fam.t_lo;

    std::vector<double> ts(kGrid), db(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        const double t = fam.t_lo + span * i / (kGrid - 1);
        const Jet2d s = seed(t);
        const Jet2d p0 = fam.p0(s);
        const Jet2d p1 = fam.p1(s);
        if (!(p0.v > 0.0) || !(p1.v > 0.0) || !(p0.d1 > 0.0)) {
            throw std::domain_error(
                "analyze: family requires p0 > 0, p1 > 0, p0' > 0 on the "
                "interval");
        }
        ts[i] = t;
        db[i] = (p1 / p0).d1;
    }

    int bracket = -1;
    for (int i = 0; i + 1 < kGrid; ++i) {
        if (db[i] < 0.0 && db[i + 1] >= 0.0) {
            bracket = i;
            break;
        }
    }
    if (bracket < 0) {
        throw std::domain_error(
            "analyze: p1/p0 has no interior minimum on the interval");
    }

    const double t0 = newton_bisect(
        [&](double t) { return beta_jet(fam, t).d1; },
        [&](double t) { return beta_jet(fam, t).d2; }, ts[bracket],
        ts[bracket + 1]);
    if (t0 - fam.t_lo < 1e-6 * span || fam.t_hi - t0 < 1e-6 * span) {
        throw std::domain_error(
            "analyze: minimum of p1/p0 sits on the interval boundary");
    }

    const Jet2d s0 = seed(t0);
    const Jet2d p0 = fam.p0(s0);
    const Jet2d q0 = fam.q0(s0);
    const Jet2d r0 = fam.r0(s0);
    const Jet2d p1 = fam.p1(s0);
    const Jet2d q1 = fam.q1(s0);
    const Jet2d r1 = fam.r1(s0);
    const Jet2d beta = p1 / p0;

    EnvelopeAsymptotics c;
    c.t0 = t0;
    c.b0 = beta.v;
    c.b2 = beta.d2;
    if (!(c.b2 > 1e-10)) {
        throw std::domain_error("analyze: degenerate curvature at the minimum");
    }
    c.p0_t0 = p0.v;
    c.p0d_t0 = p0.d1;
    c.q0_t0 = q0.v;
    c.delta0 = p0.v * r1.v - p1.v * r0.v;

    c.a0 = c.b0;
    c.a1 = q1.v - c.b0 * q0.v;
    const double cross = q1.d1 - c.b0 * q0.d1;
    c.a2 = -cross * cross / (2.0 * c.b2) + c.delta0;
    const double scale = p0.v * p0.v / p0.d1;
    c.a3 = 0.5 * c.b2 * scale * scale;
    return c;
}

double predict(const EnvelopeAsymptotics& c, double u) {
    if (!(u > 0.0)) {
        throw std::domain_error("predict: u must be positive");
    }
    const double frac = nearest_int_dist((u - c.q0_t0) / c.p0_t0);
    return c.a0 * u + c.a1 + (c.a2 + c.a3 * frac * frac) / u;
}

double brute_force_envelope(const std::function<double(int, double)>& x_of,
                            const std::function<double(int, double)>& y_of,
                            int n_lo, int n_hi, double u, double t_lo,
                            double t_hi, int grid) {
    if (n_lo < 1 || n_hi < n_lo || grid < 3) {
        throw std::invalid_argument("brute_force_envelope: bad scan range");
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> g(grid);
    for (int n = n_lo; n <= n_hi; ++n) {
        for (int i = 0; i < grid; ++i) {
            const double t = t_lo + (t_hi - t_lo) * i / (grid - 1);
            g[i] = x_of(n, t) - u;
        }
        for (int i = 0; i + 1 < grid; ++i) {
            if (!(g[i] == 0.0 || g[i] * g[i + 1] < 0.0)) continue;
            const double a = t_lo + (t_hi - t_lo) * i / (grid - 1);
            const double b = t_lo + (t_hi - t_lo) * (i + 1) / (grid - 1);
            const double t_root =
                g[i] == 0.0
                    ? a
                    : bisect([&](double t) { return x_of(n, t) - u; }, a, b);
            best = std::min(best, y_of(n, t_root));
        }
        if (g[grid - 1] == 0.0) best = std::min(best, y_of(n, t_hi));
    }
    if (!std::isfinite(best)) {
        throw std::domain_error(
            "brute_force_envelope: no curve in the range crosses the "
            "abscissa");
    }
    return best;
}

FamilySpec family_main(double tol) {
    const double t_o = newton_bisect(
        [tol](double t) { return alpha_inf(seed(t), tol).d1; },
        [tol](double t) { return alpha_inf(seed(t), tol).d2; }, 1.0 + 1e-6,
        2.0 - 1e-6);

    FamilySpec fam;
    fam.p0 = [tol](const Jet2d& t) { return apply_log(alpha_inf(t, tol)); };
    fam.q0 = [tol](const Jet2d& t) { return phi(t, tol); };
    fam.r0 = [](const Jet2d&) { return Jet2d{}; };
    fam.p1 = [tol](const Jet2d& t) { return alpha_inf(t, tol); };
    fam.q1 = [tol](const Jet2d& t) { return psi(t, tol); };
    fam.r1 = [](const Jet2d&) { return Jet2d{}; };
    fam.t_lo = t_o + 0.05;
    fam.t_hi = 1.95;
    return fam;
}

FamilySpec family_am_gm() {
    FamilySpec fam;
    fam.p0 = [](const Jet2d& t) { return t; };
    fam.q0 = [](const Jet2d&) { return Jet2d{}; };
    fam.r0 = [](const Jet2d&) { return Jet2d{}; };
    fam.p1 = [](const Jet2d& t) { return apply_exp(t); };
    fam.q1 = [](const Jet2d&) { return Jet2d{}; };
    fam.r1 = [](const Jet2d&) { return Jet2d{}; };
    fam.t_lo = 0.5;
    fam.t_hi = 1.5;
    return fam;
}

MainConstants compute_main_constants(double tol) {
    MainConstants m;

    m.t_o = newton_bisect(
        [tol](double t) { return alpha_inf(seed(t), tol).d1; },
        [tol](double t) { return alpha_inf(seed(t), tol).d2; }, 1.0 + 1e-6,
        2.0 - 1e-6);
    m.alpha_at_1 = alpha_inf(1.0, tol);
    m.alpha_at_to = alpha_inf(m.t_o, tol);

    const double e = std::exp(1.0);
    m.t_a = newton_bisect(
        [tol, e](double t) { return alpha_inf(seed(t), tol).v - e; },
        [tol](double t) { return alpha_inf(seed(t), tol).d1; }, 1.0, m.t_o);

    const EnvelopeAsymptotics c = analyze(family_main(tol));
    m.t_b = c.t0;
    m.beta2_tb = c.b2;
    m.alpha_at_tb = alpha_inf(m.t_b, tol);
    m.phi_tb = phi(m.t_b, tol);
    m.psi_tb = psi(m.t_b, tol);
    const double beta_tb = m.alpha_at_tb / std::log(m.alpha_at_tb);
    m.zeta_tb = m.psi_tb - beta_tb * m.phi_tb;
    m.big_a = 1.0 - m.zeta_tb;
    m.small_b = -m.phi_tb;
    return m;
}

}  // namespace fracmin
