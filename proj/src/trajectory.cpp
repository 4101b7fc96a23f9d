#include "fracmin/trajectory.hpp"

#include <algorithm>

namespace fracmin {

double abel_identity_residual(double t, double tol) {
    const auto lim = detail::alpha_limit_data(seed(t), tol * 1e-3);
    TrajectoryState<Jet2d> s = initial_state(seed(t));
    double lhs = 0.0;
    for (int j = 1; j <= lim.steps; ++j) {
        trajectory_step(s);
        const double delta = lim.alpha_inf.v - s.alpha.v;
        lhs += delta * s.alpha.d1 / s.alpha.v;
    }
    const double rhs = 1.0 - lim.alpha_inf.d1;
    return std::fabs(lhs - rhs);
}

double shift_identity_check(int n) {
    if (n < 1) throw std::invalid_argument("shift_identity_check: need n >= 1");
    const auto a = evolve(1.0, n);
    const auto b = evolve(2.0, n - 1);
    const auto rel = [](double x, double y) {
        return std::fabs(x - y) / std::max(1.0, std::fabs(y));
    };
    return std::max({rel(a.alpha, b.alpha), rel(a.xi, b.xi), rel(a.eta, b.eta)});
}

double eta_derivative_residual(int n, double t) {
    if (n < 1) throw std::invalid_argument("eta_derivative_residual: need n >= 1");
    const auto cur = evolve(seed(t), n);
    const auto prev = evolve(seed(t), n - 1);
    const double lhs = cur.eta.d1;
    const double rhs = cur.xi.d1 / prev.xi.v;
    return std::fabs(lhs - rhs) / std::max(1.0, std::fabs(lhs));
}

}  // namespace fracmin
