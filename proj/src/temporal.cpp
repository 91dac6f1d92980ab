#include "fracdirc/temporal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracdirc {

TemporalGrid::TemporalGrid(int intervals, double final_time) : J(intervals), T(final_time) {
    if (J < 1) throw std::invalid_argument("TemporalGrid: J must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("TemporalGrid: T must be positive");
}

double gamma_fn(double x) {
    // Lanczos, g = 7, 9 coefficients
    static constexpr double c[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,       -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection formula
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    x -= 1.0;
    double a = c[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += c[i] / (x + i);
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

FracWeights build_l1_weights(double alpha, int J) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("build_l1_weights: alpha must lie in (0,1)");
    if (J < 1) throw std::invalid_argument("build_l1_weights: J must be >= 1");
    FracWeights w;
    w.alpha = alpha;
    w.J = J;
    w.b.resize(J + 1);
    w.d.assign(J, 0.0);
    const double inv_gamma = 1.0 / gamma_fn(2.0 - alpha);
    w.b[0] = 0.0;
    for (int j = 1; j <= J; ++j) w.b[j] = std::pow(static_cast<double>(j), 1.0 - alpha) * inv_gamma;
    for (int m = 1; m <= J - 1; ++m) w.d[m] = w.b[m + 1] - 2.0 * w.b[m] + w.b[m - 1];
    return w;
}

double epsilon_factor(double alpha, double theta, int J) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("epsilon_factor: alpha must lie in (0,1]");
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("epsilon_factor: theta must lie in (0,1]");
    if (J < 2) throw std::invalid_argument("epsilon_factor: J must be >= 2");
    const double ta = theta * alpha;
    if (ta == 1.0) return std::log(static_cast<double>(J));
    return 1.0 / ta + (1.0 - std::pow(static_cast<double>(J), ta - 1.0)) / (1.0 - ta);
}

namespace {

void check_rl_args(double gamma, const std::vector<double>& samples, const TemporalGrid& grid) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("rl_integral: gamma must lie in (0,1)");
    if (static_cast<int>(samples.size()) != grid.J)
        throw std::invalid_argument("rl_integral: need one sample per slice");
}

inline double pow_pos(double x, double p) { return x > 0.0 ? std::pow(x, p) : 0.0; }

}  // namespace

std::vector<double> rl_integral_left(double gamma, const std::vector<double>& samples,
                                     const TemporalGrid& grid) {
    check_rl_args(gamma, samples, grid);
    const int J = grid.J;
    const double tau = grid.tau();
    const double c = 1.0 / gamma_fn(gamma + 1.0);
    std::vector<double> out(J, 0.0);
    for (int k = 1; k <= J; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) {
            const double a = (k - j + 1) * tau;  // t_k - t_{j-1}
            const double b = (k - j) * tau;      // t_k - t_j
            s += samples[j - 1] * (std::pow(a, gamma) - pow_pos(b, gamma));
        }
        out[k - 1] = c * s;
    }
    return out;
}

std::vector<double> rl_integral_right(double gamma, const std::vector<double>& samples,
                                      const TemporalGrid& grid) {
    check_rl_args(gamma, samples, grid);
    std::vector<double> mirrored(samples.rbegin(), samples.rend());
    std::vector<double> left = rl_integral_left(gamma, mirrored, grid);
    return {left.rbegin(), left.rend()};
}

std::vector<double> rl_integral_left_slice_integrals(double gamma,
                                                     const std::vector<double>& samples,
                                                     const TemporalGrid& grid) {
    check_rl_args(gamma, samples, grid);
    const int J = grid.J;
    const double tau = grid.tau();
    const double c = 1.0 / gamma_fn(gamma + 2.0);
    std::vector<double> out(J, 0.0);
    // antiderivative of (t - t_{j-1})^g - (t - t_j)^g over the slice (t_{k-1}, t_k)
    for (int k = 1; k <= J; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) {
            const double p = gamma + 1.0;
            const double a1 = pow_pos((k - j + 1) * tau, p);
            const double a0 = pow_pos((k - 1 - j + 1) * tau, p);
            const double b1 = pow_pos((k - j) * tau, p);
            const double b0 = pow_pos((k - 1 - j) * tau, p);
            s += samples[j - 1] * ((a1 - a0) - (b1 - b0));
        }
        out[k - 1] = c * s;
    }
    return out;
}

std::vector<double> rl_integral_right_slice_integrals(double gamma,
                                                      const std::vector<double>& samples,
                                                      const TemporalGrid& grid) {
    check_rl_args(gamma, samples, grid);
    std::vector<double> mirrored(samples.rbegin(), samples.rend());
    std::vector<double> left = rl_integral_left_slice_integrals(gamma, mirrored, grid);
    return {left.rbegin(), left.rend()};
}

}  // namespace fracdirc
