#pragma once

#include <vector>

namespace fracdirc {

/// Uniform partition of [0,T] into J intervals.
struct TemporalGrid {
    int J = 1;
    double T = 1.0;

    TemporalGrid() = default;
    TemporalGrid(int intervals, double final_time);

    double tau() const { return T / J; }
    double t(int j) const { return j * tau(); }
};

/// L1 coefficients b_j = j^{1-alpha}/Gamma(2-alpha) and their second
/// differences d_m = b_{m+1} - 2 b_m + b_{m-1}, with b_0 = 0.
struct FracWeights {
    double alpha = 0.0;
    int J = 0;
    std::vector<double> b;  // size J+1
    std::vector<double> d;  // size J, d[m] valid for m = 1..J-1
};

/// Gamma function via a Lanczos approximation (g=7, 9 terms), accurate to
/// about 1e-14 relative over the arguments used here.
double gamma_fn(double x);

FracWeights build_l1_weights(double alpha, int J);

/// Error factor of the scheme's convergence bounds:
/// 1/(theta*alpha) + (1 - J^{theta*alpha-1})/(1 - theta*alpha), or ln J when
/// theta*alpha == 1. The definition jumps at theta*alpha = 1; the one-sided
/// limit is 1 + ln J.
double epsilon_factor(double alpha, double theta, int J);

/// Riemann-Liouville fractional integrals of piecewise-constant functions,
/// with closed-form slice kernels (no quadrature). `samples[j]` is the value
/// on (t_j, t_{j+1}).
/// Left integral evaluated at t_1..t_J; right integral at t_0..t_{J-1}.
std::vector<double> rl_integral_left(double gamma, const std::vector<double>& samples,
                                     const TemporalGrid& grid);
std::vector<double> rl_integral_right(double gamma, const std::vector<double>& samples,
                                      const TemporalGrid& grid);

/// Exact per-slice integrals of the fractional integrals above; entry k is
/// the integral over (t_k, t_{k+1}). These make the duality identity a hard
/// pass/fail test.
std::vector<double> rl_integral_left_slice_integrals(double gamma,
                                                     const std::vector<double>& samples,
                                                     const TemporalGrid& grid);
std::vector<double> rl_integral_right_slice_integrals(double gamma,
                                                      const std::vector<double>& samples,
                                                      const TemporalGrid& grid);

}  // namespace fracdirc
