#pragma once

#include <mutex>
#include <vector>

namespace fracmin {

enum class Branch { minus, plus };

// Junction data for curve n, in the shifted coordinates (xi, eta):
//   t0/x0   parameter and abscissa of the curve's leftmost point,
//   tl/tr   parameter window the lower envelope actually uses,
//   x_lo    = xi_n(tl), abscissa where curve n takes over from n-1,
//   x_hi    = xi_n(tr), abscissa where curve n+1 takes over.
struct SpecialPoints {
    int n = 0;
    double t0 = 1.0;
    double x0 = 0.0;
    double tl = 1.0;
    double tr = 2.0;
    double x_lo = 0.0;
    double x_hi = 0.0;
};

// Lower envelope of the trajectory curves t -> (xi_n(t), eta_n(t)), t >= 1.
// value(x) is the minimized nested-fraction sum: on the segment where curve
// n is active, value(x) = eta_n(t) - 1 with xi_n(t) = x + 1.
class EnvelopeModel {
  public:
    explicit EnvelopeModel(double tol = 1e-12);

    // Solve xi_n(t) = x on the increasing (plus) or decreasing (minus) side
    // of the curve's minimum. The minus side exists only for n >= 7; for
    // smaller n the curve is increasing on all of t >= 1.
    double solve_branch(int n, double x, Branch branch) const;

    SpecialPoints special_points(int n) const;

    double envelope_value(double x) const;
    int critical_index(double x) const;

    // Curve points, for plotting and cross-checks.
    double xi(int n, double t) const;
    double eta(int n, double t) const;

  private:
    struct CurveData {
        double t0 = 1.0, x0 = 0.0, tl = 1.0, x_lo = 0.0;
        bool has_right = false;
        double tr = 2.0, x_hi = 0.0;
    };

    const CurveData& curve(int n) const;
    const CurveData& curve_with_right(int n) const;
    void ensure_curve(int n) const;
    void ensure_right(int n) const;
    void solve_crossing(int n) const;  // joint point of curves n-1 and n
    int locate(double big_x) const;    // n with x_lo(n) < X <= x_hi(n)

    double tol_;
    mutable std::mutex mu_;
    mutable std::vector<CurveData> cache_;  // cache_[n-1] describes curve n
};

}  // namespace fracmin
