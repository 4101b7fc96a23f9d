#include "fracmin/genpar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracmin/rootfind.hpp"

namespace fracmin {
namespace {

const double kE = std::exp(1.0);

// Optimal steps keep u = p/s at or above 1/s*(1) = 1.7417; ratios below
// this floor mean the iteration has left the maximizing branch.
const double kBranchRatioFloor = 1.70;

struct Triple {
    double x, y, z;
};

double theta_fn(double t) { return kE * std::log(t) - t; }

void run_phase(double x1, int max_steps, std::vector<Triple>& out) {
    double x = x1, y = ap_slope_limit(), z = ap_slope_limit() * x1;
    out.push_back({x, y, z});
    for (int n = 0; n < max_steps; ++n) {
        const double u = kE - x * y;
        if (!(u > 0.0) || !(x > 0.0 && x < 3.0)) {
            throw std::runtime_error(
                "tabulate_ap: iteration diverged (left the domain)");
        }
        if (u < kBranchRatioFloor) break;
        const double xn = x * u;
        if (xn > 1.0) break;
        const double yn = 1.0 - 1.0 / x + kE / xn;
        const double zn = z + xn + theta_fn(u);
        x = xn;
        y = yn;
        z = zn;
        out.push_back({x, y, z});
    }
}

double top_abscissa(double x1, int max_steps) {
    std::vector<Triple> rows;
    run_phase(x1, max_steps, rows);
    return rows.back().x;
}

// Fritsch-Carlson slopes: monotone cubic interpolation of z over x.
std::vector<double> pchip_slopes(const std::vector<ApRow>& r) {
    const std::size_t n = r.size();
    std::vector<double> h(n - 1), d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = r[i + 1].x - r[i].x;
        d[i] = (r[i + 1].z - r[i].z) / h[i];
    }
    m[0] = ((2.0 * h[0] + h[1]) * d[0] - h[0] * d[1]) / (h[0] + h[1]);
    if (m[0] * d[0] <= 0.0) m[0] = 0.0;
    m[n - 1] = ((2.0 * h[n - 2] + h[n - 3]) * d[n - 2] - h[n - 2] * d[n - 3]) /
               (h[n - 2] + h[n - 3]);
    if (m[n - 1] * d[n - 2] <= 0.0) m[n - 1] = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    return m;
}

}  // namespace

double ap_slope_limit() { return 1.0 / (1.0 - std::exp(-1.0)); }

ApTable tabulate_ap(double x1, int max_steps, int phases) {
    if (!(x1 > 0.0 && x1 <= 1e-4)) {
        throw std::invalid_argument("tabulate_ap: x1 must lie in (0, 1e-4]");
    }
    if (max_steps < 10 || phases < 1) {
        throw std::invalid_argument(
            "tabulate_ap: need max_steps >= 10 and phases >= 1");
    }

    std::vector<Triple> rows;
    for (int j = 0; j < phases; ++j) {
        run_phase(x1 * std::exp(double(j) / phases), max_steps, rows);
    }

    // Aim one extra start so its top row lands next to p = 1: scan the
    // phase offset, then bisect inside the best scan cell if it brackets.
    const int kScan = 400;
    double best_off = 0.0, best_top = -1.0;
    for (int i = 0; i <= kScan; ++i) {
        const double off = double(i) / kScan;
        const double top = top_abscissa(x1 * std::exp(off), max_steps);
        if (top > best_top) {
            best_top = top;
            best_off = off;
        }
    }
    const double target = 1.0 - 1e-9;
    double lo = best_off - 1.0 / kScan, hi = best_off + 1.0 / kScan;
    double flo = top_abscissa(x1 * std::exp(lo), max_steps) - target;
    double fhi = top_abscissa(x1 * std::exp(hi), max_steps) - target;
    double cal_off = best_off;
    if (flo * fhi < 0.0) {
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = top_abscissa(x1 * std::exp(mid), max_steps) - target;
            if (flo * fm <= 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        cal_off = 0.5 * (lo + hi);
    }
    run_phase(x1 * std::exp(cal_off), max_steps, rows);

    std::sort(rows.begin(), rows.end(),
              [](const Triple& a, const Triple& b) { return a.x < b.x; });

    ApTable tab;
    for (const Triple& t : rows) {
        if (!tab.rows.empty() &&
            t.x - tab.rows.back().x <= 1e-9 * std::max(1.0, t.x)) {
            continue;
        }
        tab.rows.push_back({t.x, t.y, t.z});
    }
    if (tab.rows.size() < 4) {
        throw std::runtime_error("tabulate_ap: table too short");
    }
    tab.slope = pchip_slopes(tab.rows);
    return tab;
}

double ap_value(const ApTable& tab, double p) {
    const double hi_edge = std::max(tab.p_max(), 1.0);
    if (!(p >= tab.p_min() && p <= hi_edge)) {
        throw std::domain_error("ap_value: p outside the tabulated range");
    }
    const auto& r = tab.rows;
    std::size_t j =
        std::upper_bound(r.begin(), r.end(), p,
                         [](double v, const ApRow& row) { return v < row.x; }) -
        r.begin();
    if (j > 0) --j;
    if (j + 1 >= r.size()) j = r.size() - 2;
    const double h = r[j + 1].x - r[j].x;
    const double s = (p - r[j].x) / h;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * r[j].z + h10 * h * tab.slope[j] + h01 * r[j + 1].z +
           h11 * h * tab.slope[j + 1];
}

double ap_closed_form(double big_a, double p) {
    if (!(p >= 1.0)) {
        throw std::domain_error("ap_closed_form: requires p >= 1");
    }
    return big_a + kE * std::log(p);
}

FeqResult feq_residual(const ApTable& tab, double p) {
    if (!(p > 0.0) || p / kE < tab.p_min() || p > std::max(tab.p_max(), 1.0)) {
        throw std::domain_error("feq_residual: table does not cover [p/e, p]");
    }
    const auto neg = [&](double u) {
        return -(ap_value(tab, p / u) + kE * std::log(u) - u);
    };
    const auto [u_star, neg_max] = grid_min(neg, 1.0, kE, 512);
    FeqResult out;
    out.u_star = u_star;
    out.residual = ap_value(tab, p) - (-neg_max + p);
    return out;
}

}  // namespace fracmin
