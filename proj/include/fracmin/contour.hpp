#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace fracmin {

// The verification contour around [1, 2]: a sector annulus bounded by two
// quarter arcs (|z| = 0.25 and |z| = 3.5, |arg z| <= pi/4) and the two rays
// arg z = -pi/4 (lower) and +pi/4 (upper). The rays split into a middle
// piece (1.15 <= |z| <= 2.3) and the two end pieces, giving six arc groups.
enum class Arc {
    inner_arc,
    outer_arc,
    ray_mid_lower,
    ray_ends_lower,
    ray_mid_upper,
    ray_ends_upper,
};

const std::vector<Arc>& contour_arcs();
std::string arc_name(Arc arc);

// Geometric tail rate a certified on each arc group (see delta_star).
double arc_tail_rate(Arc arc);

struct ArcExtrema {
    double sqrt_alpha_min = 0.0;   // min over the arc of |alpha_depth|^(1/2)
    double inv_sqrt_xi_max = 0.0;  // max over the arc of |xi_depth|^(-1/2)
};

// Extremizes over a dense discretization refined by golden section.
ArcExtrema arc_extrema(Arc arc, int depth = 5, int nodes = 2001);

// Upper bound for sum_{j >= depth} 1/|xi_j(z)|: a partial sum plus the
// geometric tail |xi_J|^{-1} / (1 - 1/a). Requires the certificate
// 1 + |xi_depth|^{-1/2} <= a < |alpha_depth|^{1/2} at z and throws a domain
// error when it fails (that would falsify the tail lemma on the contour).
double delta_star(std::complex<double> z, double tail_rate, int depth = 5,
                  double tol = 1e-12);

struct IntegralResult {
    double value = 0.0;
    double err = 0.0;  // change under panel doubling
};

// Integral of delta_star over one arc group against arc length, optionally
// weighted by 1/|z-1|^2; composite 8-node Gauss-Legendre panels.
IntegralResult arc_delta_integral(Arc arc, bool pole_weight = false,
                                  int depth = 5, int panels = 32);

// Totals over all six arc groups.
IntegralResult integral_B(int depth = 5, int panels = 32);
IntegralResult integral_B1(int depth = 5, int panels = 32);

// min over t in [1,2] of t^3 * alpha_depth''(t).
double min_weighted_curvature(int depth = 5);

// Winding number of f along the positively oriented contour. Throws if f
// comes within 1e-9 of zero on the sampled loop or the accumulated argument
// is not close to a multiple of 2*pi.
int winding_number(const std::function<std::complex<double>(std::complex<double>)>& f,
                   int nodes_per_piece = 2048);

struct CheckResult {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    char rel = '<';  // pass means value < bound (or > for '>')
    bool pass = false;
};

// Every contour-based bound: arc extrema vs their certified floors and
// ceilings, piecewise and total integral budgets, curvature and endpoint
// slope margins, and the denominator winding checks.
std::vector<CheckResult> verification_manifest();

std::string format_manifest(const std::vector<CheckResult>& checks);

}  // namespace fracmin
