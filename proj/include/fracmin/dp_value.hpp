#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fracmin {

// S_n(t_1..t_{n-1}, x) = t_1 + sum_{j=2}^{n-1} t_j/(t_{j-1}+p) + x/(t_{n-1}+p);
// for an empty interior tuple the value is x itself.
double objective(const std::vector<double>& t_interior, double x, double p = 1.0);

struct DpOptions {
    double p = 1.0;
    // Restrict the inner minimization to y <= x-1, the exact range of the
    // p=1 functional equation. Ignored (full range used) when p != 1.
    bool cap_shifted = true;
    int polish_iters = 80;
};

struct ValueTable {
    double p = 1.0;
    std::vector<double> xs;   // xs[0] = 0, then log-spaced up to x_max
    // value[k][i] = F_{k+1}(xs[i]);  arg_y / arg_index give the minimizing
    // y (polished) and its grid cell at the previous level.
    std::vector<std::vector<double>> value;
    std::vector<std::vector<double>> arg_y;
    std::vector<std::vector<int>> arg_index;
    bool hit_grid_boundary = false;

    int levels() const { return static_cast<int>(value.size()); }
    double x_max() const { return xs.back(); }
};

ValueTable dp_sweep(double x_max, int n_max, int grid_points, const DpOptions& opt = {});

// Interpolated F_n at arbitrary x in [0, x_max] (level n counts from 1).
double table_value(const ValueTable& tab, int n, double x);

// Deepest level, i.e. the F approximation once levels have stabilized.
double table_limit_value(const ValueTable& tab, double x);

// Minimizing interior tuple (t_1..t_{n-1}) recovered from the argmin chain
// at grid node i of level n.
std::vector<double> reconstruct_chain(const ValueTable& tab, int n, int i);

// Serializes rows n,x,F_n,argmin_y (LF line ends, '.' decimal, ',' separator).
std::string to_csv(const ValueTable& tab);

// Change of variables between an interior tuple t and a positive tuple u
// with sum 1: the nested-fraction objective becomes
// u_1/u_2 + ... + u_{n-1}/u_n + x*u_n.
std::vector<double> to_additive(const std::vector<double>& t_interior);
std::vector<double> from_additive(const std::vector<double>& u);
double additive_objective(const std::vector<double>& u, double x);

// Smaller root in (1, 2) of 2*log((b+1)/2) = b/e, and the companion constant
// max_{0<=x<=1} (e*log(x+1) + b1/(x+1) - x); both feed the crude envelope
// bounds around e*log(x+1).
double crude_b1_root();
double crude_a1_const(double b1);

}  // namespace fracmin
