#include "fracmin/rootfind.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracmin {

double newton_bisect(const std::function<double(double)>& f,
                     const std::function<double(double)>& df,
                     double lo, double hi, double tol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("newton_bisect: endpoints do not bracket a root");
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        const double d = df(x);
        double next = (d != 0.0) ? x - fx / d : std::numeric_limits<double>::quiet_NaN();
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= tol * (1.0 + std::fabs(x)) && it > 2) return next;
        x = next;
        if (hi - lo <= tol * (1.0 + std::fabs(x))) return x;
    }
    return x;
}

double bisect(const std::function<double(double)>& f,
              double lo, double hi, double tol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect: endpoints do not bracket a root");
    for (int it = 0; it < max_iter && hi - lo > tol * (1.0 + std::fabs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> scan_bracket(const std::function<double(double)>& f,
                                       double lo, double hi, int cells) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double a = lo, fa = f(lo);
    for (int i = 1; i <= cells; ++i) {
        const double b = lo + (hi - lo) * i / cells;
        const double fb = f(b);
        if (fa == 0.0) return {a, a};
        if ((fa > 0.0) != (fb > 0.0)) return {a, b};
        a = b;
        fa = fb;
    }
    return {nan, nan};
}

double golden_min(const std::function<double(double)>& f,
                  double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * (1.0 + std::fabs(a) + std::fabs(b))) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

std::pair<double, double> grid_min(const std::function<double(double)>& f,
                                   double lo, double hi, int nodes,
                                   double tol) {
    if (nodes < 3) throw std::invalid_argument("grid_min: need at least 3 nodes");
    int best = 0;
    double fbest = f(lo);
    for (int i = 1; i < nodes; ++i) {
        const double x = lo + (hi - lo) * i / (nodes - 1);
        const double fx = f(x);
        if (fx < fbest) {
            fbest = fx;
            best = i;
        }
    }
    const double step = (hi - lo) / (nodes - 1);
    const double a = std::max(lo, lo + (best - 1) * step);
    const double b = std::min(hi, lo + (best + 1) * step);
    const double x = golden_min(f, a, b, tol);
    const double fx = f(x);
    return fx <= fbest ? std::pair{x, fx} : std::pair{lo + best * step, fbest};
}

}  // namespace fracmin
