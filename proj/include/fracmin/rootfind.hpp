#pragma once

#include <functional>
#include <utility>

namespace fracmin {

// Root of f on [lo, hi]; f(lo) and f(hi) must have opposite signs.
// Uses the supplied derivative for Newton steps and falls back to
// bisection whenever a step leaves the bracket.
double newton_bisect(const std::function<double(double)>& f,
                     const std::function<double(double)>& df,
                     double lo, double hi, double tol = 1e-13, int max_iter = 200);

// Plain bisection for functions whose derivative is unavailable or unreliable.
double bisect(const std::function<double(double)>& f,
              double lo, double hi, double tol = 1e-13, int max_iter = 400);

// Brackets a sign change of f by scanning [lo, hi] with `cells` equal
// subintervals; returns the first bracketing cell, or {nan, nan}.
std::pair<double, double> scan_bracket(const std::function<double(double)>& f,
                                       double lo, double hi, int cells);

// Golden-section minimum of a unimodal f on [lo, hi].
// Returns the abscissa; tol is absolute in the argument.
double golden_min(const std::function<double(double)>& f,
                  double lo, double hi, double tol = 1e-11);

// Discrete grid scan followed by golden-section polish in the two
// bracketing cells; robust for continuous functions with a few kinks.
std::pair<double, double> grid_min(const std::function<double(double)>& f,
                                   double lo, double hi, int nodes,
                                   double tol = 1e-11);

}  // namespace fracmin
