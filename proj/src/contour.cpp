#include "fracmin/contour.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fracmin/rootfind.hpp"
#include "fracmin/trajectory.hpp"

namespace fracmin {
namespace {

using Cplx = std::complex<double>;

const double kPi = 3.14159265358979323846;

struct Segment {
    bool is_circle;   // circle: z = R e^{iu}; ray: z = u e^{i phase}
    double scale;     // R for circles, unused for rays
    double phase;     // ray direction
    double u0, u1;
    double jacobian() const { return is_circle ? scale : 1.0; }
    Cplx at(double u) const {
        return is_circle ? std::polar(scale, u) : std::polar(u, phase);
    }
};

std::vector<Segment> segments_of(Arc arc) {
    const double q = kPi / 4.0;
    switch (arc) {
        case Arc::inner_arc:
            return {{true, 0.25, 0.0, -q, q}};
        case Arc::outer_arc:
            return {{true, 3.5, 0.0, -q, q}};
        case Arc::ray_mid_lower:
            return {{false, 0.0, -q, 1.15, 2.3}};
        case Arc::ray_ends_lower:
            return {{false, 0.0, -q, 0.25, 1.15}, {false, 0.0, -q, 2.3, 3.5}};
        case Arc::ray_mid_upper:
            return {{false, 0.0, q, 1.15, 2.3}};
        case Arc::ray_ends_upper:
            return {{false, 0.0, q, 0.25, 1.15}, {false, 0.0, q, 2.3, 3.5}};
    }
    throw std::logic_error("segments_of: bad arc");
}

TrajectoryState<Cplx> evolve_at(Cplx z, int depth) {
    return evolve(z, depth);
}

// 8-node Gauss-Legendre rule on [-1, 1].
const double kGlNode[8] = {-0.9602898564975363, -0.7966664774136267,
                           -0.5255324099163290, -0.1834346424956498,
                           0.1834346424956498,  0.5255324099163290,
                           0.7966664774136267,  0.9602898564975363};
const double kGlWeight[8] = {0.1012285362903763, 0.2223810344533745,
                             0.3137066458778873, 0.3626837833783620,
                             0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

double integrate_segment(const Segment& seg,
                         const std::function<double(Cplx)>& f, int panels) {
    double total = 0.0;
    const double h = (seg.u1 - seg.u0) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = seg.u0 + (p + 0.5) * h;
        double acc = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double u = mid + 0.5 * h * kGlNode[k];
            acc += kGlWeight[k] * f(seg.at(u));
        }
        total += acc * 0.5 * h;
    }
    return total * seg.jacobian();
}

}  // namespace

const std::vector<Arc>& contour_arcs() {
    static const std::vector<Arc> arcs = {
        Arc::inner_arc,      Arc::outer_arc,      Arc::ray_mid_lower,
        Arc::ray_ends_lower, Arc::ray_mid_upper,  Arc::ray_ends_upper,
    };
    return arcs;
}

std::string arc_name(Arc arc) {
    switch (arc) {
        case Arc::inner_arc: return "inner_arc";
        case Arc::outer_arc: return "outer_arc";
        case Arc::ray_mid_lower: return "ray_mid_lower";
        case Arc::ray_ends_lower: return "ray_ends_lower";
        case Arc::ray_mid_upper: return "ray_mid_upper";
        case Arc::ray_ends_upper: return "ray_ends_upper";
    }
    throw std::logic_error("arc_name: bad arc");
}

double arc_tail_rate(Arc arc) {
    switch (arc) {
        case Arc::inner_arc: return 2.2;
        case Arc::outer_arc: return 1.85;
        case Arc::ray_mid_lower:
        case Arc::ray_mid_upper: return 1.3;
        case Arc::ray_ends_lower:
        case Arc::ray_ends_upper: return 1.47;
    }
    throw std::logic_error("arc_tail_rate: bad arc");
}

ArcExtrema arc_extrema(Arc arc, int depth, int nodes) {
    ArcExtrema out;
    double alpha_min = 1e300, xi_min = 1e300;
    for (const Segment& seg : segments_of(arc)) {
        const auto fa = [&](double u) {
            return std::abs(evolve_at(seg.at(u), depth).alpha);
        };
        const auto fx = [&](double u) {
            return std::abs(evolve_at(seg.at(u), depth).xi);
        };
        alpha_min = std::min(alpha_min, grid_min(fa, seg.u0, seg.u1, nodes).second);
        xi_min = std::min(xi_min, grid_min(fx, seg.u0, seg.u1, nodes).second);
    }
    out.sqrt_alpha_min = std::sqrt(alpha_min);
    out.inv_sqrt_xi_max = 1.0 / std::sqrt(xi_min);
    return out;
}

double delta_star(Cplx z, double tail_rate, int depth, double tol) {
    TrajectoryState<Cplx> st = evolve_at(z, depth);
    const double sa = std::sqrt(std::abs(st.alpha));
    const double sx = 1.0 / std::sqrt(std::abs(st.xi));
    if (!(sa - sx > 1.0) || !(1.0 + sx <= tail_rate && tail_rate < sa)) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "delta_star: tail certificate fails at z=(%.6g,%.6g): "
                      "|alpha|^1/2=%.6g, |xi|^-1/2=%.6g, rate=%.6g",
                      z.real(), z.imag(), sa, sx, tail_rate);
        throw std::domain_error(buf);
    }
    double sum = 0.0;
    for (int j = 0; j < 500; ++j) {
        const double inv = 1.0 / std::abs(st.xi);
        const double tail = inv / (1.0 - 1.0 / tail_rate);
        if (tail <= tol) return sum + tail;
        sum += inv;
        trajectory_step(st);
    }
    throw std::runtime_error("delta_star: tail did not converge");
}

IntegralResult arc_delta_integral(Arc arc, bool pole_weight, int depth,
                                  int panels) {
    const double rate = arc_tail_rate(arc);
    const auto f = [&](Cplx z) {
        const double d = delta_star(z, rate, depth);
        if (!pole_weight) return d;
        const double m = std::abs(z - Cplx(1.0, 0.0));
        return d / (m * m);
    };
    double coarse = 0.0, fine = 0.0;
    for (const Segment& seg : segments_of(arc)) {
        coarse += integrate_segment(seg, f, panels);
        fine += integrate_segment(seg, f, 2 * panels);
    }
    return {fine, std::fabs(fine - coarse)};
}

IntegralResult integral_B(int depth, int panels) {
    IntegralResult total;
    for (Arc a : contour_arcs()) {
        const IntegralResult r = arc_delta_integral(a, false, depth, panels);
        total.value += r.value;
        total.err += r.err;
    }
    return total;
}

IntegralResult integral_B1(int depth, int panels) {
    IntegralResult total;
    for (Arc a : contour_arcs()) {
        const IntegralResult r = arc_delta_integral(a, true, depth, panels);
        total.value += r.value;
        total.err += r.err;
    }
    return total;
}

double min_weighted_curvature(int depth) {
    const auto f = [&](double t) {
        return t * t * t * evolve(seed(t), depth).alpha.d2;
    };
    return grid_min(f, 1.0, 2.0, 2001).second;
}

int winding_number(
    const std::function<Cplx(Cplx)>& f, int nodes_per_piece) {
    const double q = kPi / 4.0;
    // positively oriented loop: lower ray outward, outer arc, upper ray
    // inward, inner arc back
    const Segment loop[4] = {
        {false, 0.0, -q, 0.25, 3.5},
        {true, 3.5, 0.0, -q, q},
        {false, 0.0, q, 3.5, 0.25},
        {true, 0.25, 0.0, q, -q},
    };
    double total = 0.0;
    Cplx prev = f(loop[0].at(loop[0].u0));
    for (const Segment& seg : loop) {
        for (int i = 1; i <= nodes_per_piece; ++i) {
            const double u = seg.u0 + (seg.u1 - seg.u0) * i / nodes_per_piece;
            const Cplx w = f(seg.at(u));
            if (std::abs(w) < 1e-9) {
                throw std::runtime_error(
                    "winding_number: function vanishes on the contour");
            }
            total += std::arg(w / prev);
            prev = w;
        }
    }
    const double turns = total / (2.0 * kPi);
    const int rounded = int(std::lround(turns));
    if (std::fabs(turns - rounded) > 0.01) {
        throw std::runtime_error(
            "winding_number: accumulated argument is not a whole turn");
    }
    return rounded;
}

std::vector<CheckResult> verification_manifest() {
    std::vector<CheckResult> rows;
    const auto push = [&rows](std::string name, double value, char rel,
                              double bound) {
        const bool ok = rel == '<' ? value < bound : value > bound;
        rows.push_back({std::move(name), value, bound, rel, ok});
    };

    const double alpha_floor[6] = {2.2, 1.85, 1.31, 1.47, 1.31, 1.47};
    const double xi_ceiling[6] = {0.1, 0.05, 0.28, 0.27, 0.28, 0.27};
    ArcExtrema ext[6];
    int idx = 0;
    for (Arc a : contour_arcs()) {
        ext[idx] = arc_extrema(a);
        push(arc_name(a) + ".sqrt_alpha_min", ext[idx].sqrt_alpha_min, '>',
             alpha_floor[idx]);
        push(arc_name(a) + ".inv_sqrt_xi_max", ext[idx].inv_sqrt_xi_max, '<',
             xi_ceiling[idx]);
        ++idx;
    }
    push("outer_arc.sqrt_alpha_min_vs_listing",
         std::fabs(ext[1].sqrt_alpha_min - 1.853645785), '<', 1e-6);
    push("outer_arc.inv_sqrt_xi_max_vs_listing",
         std::fabs(ext[1].inv_sqrt_xi_max - 0.04455733765), '<', 1e-6);

    const double arc_budget[6] = {0.008, 0.03, 0.54, 0.68, 0.54, 0.68};
    double b_total = 0.0, b_err = 0.0;
    idx = 0;
    for (Arc a : contour_arcs()) {
        const IntegralResult r = arc_delta_integral(a);
        push("integral." + arc_name(a), r.value, '<', arc_budget[idx]);
        b_total += r.value;
        b_err += r.err;
        ++idx;
    }
    push("integral.total_B", b_total, '<', 2.48);
    push("integral.total_B.quad_err", b_err, '<', 1e-3);
    const IntegralResult b1 = integral_B1();
    push("integral.total_B1", b1.value, '<', 4.2);
    push("integral.total_B1.quad_err", b1.err, '<', 1e-3);

    // the crude outer-arc arithmetic: length x max^2 / (1 - 1/rate)
    const double crude = (kPi / 2.0) * 3.5 * ext[1].inv_sqrt_xi_max *
                         ext[1].inv_sqrt_xi_max / (1.0 - 1.0 / 1.85);
    push("integral.outer_arc.crude_arith", crude, '<', 0.03);

    const double curv = min_weighted_curvature();
    push("curvature.min_t3_dd", curv, '>', 2.32);
    push("curvature.positivity_margin",
         curv - std::pow(2.0, 1.5) / kPi * b_total, '>', 0.08);

    const Jet2d a1 = evolve(seed(1.0), 5).alpha;
    const Jet2d a2 = evolve(seed(2.0), 5).alpha;
    push("slope.at_1", a1.d1, '<', -0.7);
    push("slope.at_2", a2.d1, '>', 0.48);
    push("slope.tail_margin_at_2", b_total / (4.0 * kPi), '<', 0.2);
    push("slope.tail_margin_at_1", b1.value / (2.0 * kPi), '<', 0.67);

    const auto poly = [](std::initializer_list<double> coeffs) {
        // coefficients from the highest power down
        return [coeffs](Cplx z) {
            Cplx acc = 0.0;
            for (double c : coeffs) acc = acc * z + c;
            return acc;
        };
    };
    const auto cubic = [](Cplx z) { return z * (z * z + 1.0); };
    push("winding.linear_times_quadratic",
         std::fabs(double(winding_number(cubic))), '<', 0.5);
    push("winding.quartic",
         std::fabs(double(winding_number(poly({1, 0, 2, 1, 1})))), '<', 0.5);
    push("winding.octic",
         std::fabs(double(winding_number(
             poly({1, 0, 4, 2, 7, 4, 6, 2, 1})))),
         '<', 0.5);
    return rows;
}

std::string format_manifest(const std::vector<CheckResult>& checks) {
    std::string out;
    char line[160];
    for (const CheckResult& c : checks) {
        std::snprintf(line, sizeof(line), "[%s] %-40s %.10g %c %.10g\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.rel,
                      c.bound);
        out += line;
    }
    return out;
}

}  // namespace fracmin
