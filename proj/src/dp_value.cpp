#include "fracmin/dp_value.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fracmin/rootfind.hpp"

namespace fracmin {

double objective(const std::vector<double>& t_interior, double x, double p) {
    if (p <= 0.0) throw std::domain_error("objective: p must be positive");
    if (t_interior.empty()) return x;
    double s = t_interior[0];
    for (size_t j = 1; j < t_interior.size(); ++j)
        s += t_interior[j] / (t_interior[j - 1] + p);
    return s + x / (t_interior.back() + p);
}

namespace {

// Piecewise-linear read of a level: linear in y on the first cell touching
// zero, linear in log y elsewhere (the grid is log-spaced).
struct LevelInterp {
    const std::vector<double>& xs;
    const std::vector<double>& ls;  // log(xs[i]) for i >= 1
    const std::vector<double>& f;

    double operator()(double y) const {
        if (y <= xs[1]) {
            const double w = y / xs[1];
            return f[0] * (1.0 - w) + f[1] * w;
        }
        const auto it = std::upper_bound(xs.begin() + 1, xs.end(), y);
        size_t hi = std::min<size_t>(xs.size() - 1, it - xs.begin());
        const size_t lo = hi - 1;
        const double w = (std::log(y) - ls[lo]) / (ls[hi] - ls[lo]);
        return f[lo] * (1.0 - w) + f[hi] * w;
    }
};

struct Sweep {
    const std::vector<double>& xs;
    const std::vector<double>& prev;
    double p;
    std::vector<int>& caps;  // per-x largest feasible y index

    double cost(int i, int j) const { return prev[j] + xs[i] / (xs[j] + p); }

    void solve(int ilo, int ihi, int jlo, int jhi, std::vector<int>& arg) {
        if (ilo > ihi) return;
        const int mid = (ilo + ihi) / 2;
        const int top = std::min(jhi, caps[mid]);
        int best = std::min(jlo, top);
        double fbest = cost(mid, best);
        for (int j = best + 1; j <= top; ++j) {
            const double c = cost(mid, j);
            if (c < fbest) {
                fbest = c;
                best = j;
            }
        }
        arg[mid] = best;
        solve(ilo, mid - 1, jlo, best, arg);
        solve(mid + 1, ihi, best, jhi, arg);
    }
};

}  // namespace

ValueTable dp_sweep(double x_max, int n_max, int grid_points, const DpOptions& opt) {
    if (!(x_max > 1.0)) throw std::invalid_argument("dp_sweep: x_max must exceed 1");
    if (n_max < 1) throw std::invalid_argument("dp_sweep: n_max must be >= 1");
    if (grid_points < 1000) throw std::invalid_argument("dp_sweep: grid too coarse");
    if (opt.p <= 0.0) throw std::domain_error("dp_sweep: p must be positive");

    ValueTable tab;
    tab.p = opt.p;
    const int m = grid_points;
    tab.xs.resize(m + 1);
    tab.xs[0] = 0.0;
    const double llo = std::log(1e-6), lhi = std::log(x_max);
    for (int i = 1; i <= m; ++i)
        tab.xs[i] = std::exp(llo + (lhi - llo) * (i - 1) / (m - 1));
    tab.xs[m] = x_max;

    std::vector<double> ls(m + 1, 0.0);
    for (int i = 1; i <= m; ++i) ls[i] = std::log(tab.xs[i]);

    const bool fe1 = opt.cap_shifted && opt.p == 1.0;

    std::vector<int> caps(m + 1, 0);
    {
        int j = 0;
        for (int i = 0; i <= m; ++i) {
            const double cap = fe1 ? tab.xs[i] - 1.0 : tab.xs[i];
            while (j + 1 <= m && tab.xs[j + 1] <= cap) ++j;
            caps[i] = std::min(j, i);
        }
    }

    tab.value.assign(n_max, {});
    tab.arg_y.assign(n_max, std::vector<double>(m + 1, 0.0));
    tab.arg_index.assign(n_max, std::vector<int>(m + 1, 0));
    tab.value[0] = tab.xs;

    for (int lvl = 1; lvl < n_max; ++lvl) {
        const std::vector<double>& prev = tab.value[lvl - 1];
        std::vector<double>& cur = tab.value[lvl];
        cur = prev;

        int first = 0;
        while (first <= m && (fe1 ? tab.xs[first] <= 1.0 : first == 0)) {
            cur[first] = fe1 ? tab.xs[first] : prev[first];
            ++first;
        }
        if (first > m) continue;

        std::vector<int> arg(m + 1, 0);
        Sweep sweep{tab.xs, prev, opt.p, caps};
        sweep.solve(first, m, 0, caps[m], arg);

        const LevelInterp interp{tab.xs, ls, prev};
        for (int i = first; i <= m; ++i) {
            const int j = arg[i];
            const double x = tab.xs[i];
            const double cap = fe1 ? x - 1.0 : x;
            const double ylo = j > 0 ? tab.xs[j - 1] : 0.0;
            const double yhi = std::min(cap, j + 1 <= m ? tab.xs[j + 1] : cap);
            double fy = prev[j] + x / (tab.xs[j] + opt.p);
            double yb = tab.xs[j];
            if (yhi > ylo) {
                const auto g = [&](double y) { return interp(y) + x / (y + opt.p); };
                const double yg = golden_min(g, ylo, yhi, 1e-13);
                const double fg = g(yg);
                if (fg < fy) {
                    fy = fg;
                    yb = yg;
                }
            }
            cur[i] = fy;
            tab.arg_y[lvl][i] = yb;
            tab.arg_index[lvl][i] = j;
            if (j >= 1 && (j == i || j == m)) tab.hit_grid_boundary = true;
        }
    }
    return tab;
}

namespace {

double interp_level(const ValueTable& tab, const std::vector<double>& f, double x) {
    if (x < 0.0 || x > tab.x_max() * (1.0 + 1e-12))
        throw std::domain_error("table_value: x outside tabulated range");
    x = std::min(x, tab.x_max());
    if (x <= tab.xs[1]) {
        const double w = x / tab.xs[1];
        return f[0] * (1.0 - w) + f[1] * w;
    }
    const auto it = std::upper_bound(tab.xs.begin() + 1, tab.xs.end(), x);
    const size_t hi = std::min<size_t>(tab.xs.size() - 1, it - tab.xs.begin());
    const size_t lo = hi - 1;
    const double w =
        (std::log(x) - std::log(tab.xs[lo])) / (std::log(tab.xs[hi]) - std::log(tab.xs[lo]));
    return f[lo] * (1.0 - w) + f[hi] * w;
}

}  // namespace

double table_value(const ValueTable& tab, int n, double x) {
    if (n < 1 || n > tab.levels()) throw std::invalid_argument("table_value: bad level");
    return interp_level(tab, tab.value[n - 1], x);
}

double table_limit_value(const ValueTable& tab, double x) {
    return interp_level(tab, tab.value.back(), x);
}

std::vector<double> reconstruct_chain(const ValueTable& tab, int n, int i) {
    if (n < 1 || n > tab.levels()) throw std::invalid_argument("reconstruct_chain: bad level");
    if (i < 0 || i >= static_cast<int>(tab.xs.size()))
        throw std::invalid_argument("reconstruct_chain: bad node");
    std::vector<double> chain;
    int node = i;
    for (int lvl = n - 1; lvl >= 1; --lvl) {
        node = tab.arg_index[lvl][node];
        chain.push_back(tab.xs[node]);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

std::string to_csv(const ValueTable& tab) {
    std::string out = "n,x,F_n,argmin_y\n";
    char line[160];
    for (int lvl = 0; lvl < tab.levels(); ++lvl)
        for (size_t i = 0; i < tab.xs.size(); ++i) {
            std::snprintf(line, sizeof line, "%d,%.12g,%.12g,%.12g\n", lvl + 1,
                          tab.xs[i], tab.value[lvl][i], lvl ? tab.arg_y[lvl][i] : 0.0);
            out += line;
        }
    return out;
}

std::vector<double> to_additive(const std::vector<double>& t_interior) {
    if (t_interior.empty()) return {1.0};
    const size_t n = t_interior.size() + 1;
    std::vector<double> u(n);
    u[n - 1] = 1.0 / (t_interior[n - 2] + 1.0);
    for (size_t j = n - 1; j >= 2; --j)
        u[j - 1] = t_interior[j - 1] * u[j] / (t_interior[j - 2] + 1.0);
    u[0] = t_interior[0] * u[1];
    return u;
}

std::vector<double> from_additive(const std::vector<double>& u) {
    if (u.empty()) throw std::invalid_argument("from_additive: empty tuple");
    const size_t n = u.size();
    std::vector<double> t(n - 1);
    double s = u[0];
    for (size_t j = 1; j < n; ++j) {
        t[j - 1] = s / u[j];
        s += u[j];
    }
    return t;
}

double additive_objective(const std::vector<double>& u, double x) {
    double s = 0.0;
    for (size_t j = 0; j + 1 < u.size(); ++j) s += u[j] / u[j + 1];
    return s + x * u.back();
}

double crude_b1_root() {
    const double e = std::exp(1.0);
    const auto g = [&](double b) { return 2.0 * std::log(0.5 * (b + 1.0)) - b / e; };
    return bisect(g, 1.0 + 1e-9, 2.0, 1e-14);
}

double crude_a1_const(double b1) {
    const double e = std::exp(1.0);
    const auto h = [&](double x) { return -(e * std::log(x + 1.0) + b1 / (x + 1.0) - x); };
    const auto [x, neg] = grid_min(h, 0.0, 1.0, 801, 1e-13);
    (void)x;
    return -neg;
}

}  // namespace fracmin
