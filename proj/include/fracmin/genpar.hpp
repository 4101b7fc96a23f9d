#pragma once

#include <cstddef>
#include <vector>

namespace fracmin {

// The small-p slope of A: A(p) = p/(1 - 1/e) + o(p).
double ap_slope_limit();

// One tabulated point (p, A'(p), A(p)) of the left branch (p <= 1).
struct ApRow {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Merged tabulation of A on (0, 1] with precomputed monotone cubic slopes.
struct ApTable {
    std::vector<ApRow> rows;
    std::vector<double> slope;  // interpolation slopes for z over x
    double p_min() const { return rows.front().x; }
    double p_max() const { return rows.back().x; }
};

// Tabulates A(p) by the forward step law
//   x_n = e*x_{n-1} - x_{n-1}^2*y_{n-1}
//   y_n = 1 - 1/x_{n-1} + e/x_n
//   z_n = z_{n-1} + x_n + theta(e - x_{n-1}*y_{n-1}),  theta(t) = e*log t - t
// seeded with y_1 = 1/(1-1/e), z_1 = y_1*x_1. Runs `phases` interleaved
// starts x1*e^(j/phases) plus one start calibrated to land its top row next
// to p = 1, and merges the rows. A step is recorded only while it stays on
// the maximizing branch of the functional equation: the step ratio
// e - x*y stays above kBranchRatioFloor and the produced abscissa stays
// at or below 1 (the map has a second, non-maximal critical branch with
// smaller ratios whose rows do not equal A).
ApTable tabulate_ap(double x1 = 1e-6, int max_steps = 200, int phases = 128);

// A(p) by monotone cubic interpolation of the table; valid on
// [p_min, max(p_max, 1)] (the last cell extends to the p = 1 junction).
double ap_value(const ApTable& tab, double p);

// A(p) = A + e*log p on p >= 1.
double ap_closed_form(double big_a, double p);

struct FeqResult {
    double residual = 0.0;
    double u_star = 0.0;
};

// Residual of the functional equation
//   A(p) = max_{1 <= u <= e} (A(p/u) - u + e*log u) + p
// with the max taken over the interpolated table.
FeqResult feq_residual(const ApTable& tab, double p);

}  // namespace fracmin
