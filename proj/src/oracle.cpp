#include "fracdirc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracdirc {

namespace {

constexpr double kPi = std::numbers::pi;

double ml_series(double alpha, double beta, double z) {
    // Kahan-compensated power series sum_k z^k / Gamma(alpha k + beta)
    double sum = 0.0, comp = 0.0;
    double zk = 1.0;
    for (int k = 0; k < 4000; ++k) {
        const double arg = alpha * k + beta;
        if (arg > 170.0) break;  // terms are 0 to double precision long before this
        const double term = zk / gamma_fn(arg);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        zk *= z;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)) && arg > 2.0 && std::abs(zk) < 1.0)
            break;
    }
    return sum;
}

struct MlKernel {
    double alpha, beta, x;
    double sb;   // sin(pi (1-beta))
    double sba;  // sin(pi (1-beta+alpha))
    double ca;   // cos(pi alpha)

    double operator()(double r) const {
        const double num = r * sb + x * sba;
        const double den = r * r + 2.0 * r * x * ca + x * x;
        const double expo = (1.0 - beta) / alpha;
        const double head = (expo == 0.0) ? 1.0 : std::pow(r, expo);
        return (1.0 / (kPi * alpha)) * head * std::exp(-std::pow(r, 1.0 / alpha)) * num / den;
    }
};

// 15-point Gauss-Kronrod pair on [-1, 1]
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.0};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

template <typename F>
void gauss_kronrod(const F& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double resk = kWgk[7] * f(c);
    double resg = kWg[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const double fv = f(c - hw * kXgk[i]) + f(c + hw * kXgk[i]);
        resk += kWgk[i] * fv;
        if (i % 2 == 1) resg += kWg[i / 2] * fv;
    }
    value = resk * hw;
    error = std::abs(resk - resg) * hw;
}

template <typename F>
double adaptive_integrate(const F& f, double a, double b, double abs_tol, int depth = 0) {
    double v, e;
    gauss_kronrod(f, a, b, v, e);
    if (e <= abs_tol || depth >= 48) return v;
    const double c = 0.5 * (a + b);
    return adaptive_integrate(f, a, c, 0.5 * abs_tol, depth + 1) +
           adaptive_integrate(f, c, b, 0.5 * abs_tol, depth + 1);
}

double ml_integral(double alpha, double beta, double x) {
    // E_{alpha,beta}(-x) for 0 < alpha < 1, 0 < beta <= 1, x > 0
    MlKernel k{alpha, beta, x,
               std::sin(kPi * (1.0 - beta)), std::sin(kPi * (1.0 - beta + alpha)),
               std::cos(kPi * alpha)};
    const double R = std::pow(42.0, alpha);  // exp(-r^{1/alpha}) < 6e-19 beyond
    std::vector<double> knots{0.0};
    if (k.ca < 0.0) {
        // near-pole of the denominator at r ~ x|cos(pi alpha)|
        const double r0 = -x * k.ca;
        const double w = x * std::sin(kPi * alpha);
        for (double s : {r0 - 2.0 * w, r0 - w, r0, r0 + w, r0 + 2.0 * w})
            if (s > 0.0 && s < R) knots.push_back(s);
    }
    if (1.0 < R) knots.push_back(1.0);
    knots.push_back(R);
    std::sort(knots.begin(), knots.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (knots[i + 1] > knots[i])
            total += adaptive_integrate(k, knots[i], knots[i + 1], 2e-13);
    return total;
}

}  // namespace

double mittag_leffler(double alpha, double beta, double z) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("mittag_leffler: alpha must lie in (0,1]");
    if (!(beta > 0.0 && beta <= 2.5))
        throw std::invalid_argument("mittag_leffler: beta outside validated range (0,2.5]");
    if (!(z <= 0.0 && z >= -200.0))
        throw std::invalid_argument("mittag_leffler: z outside validated range [-200,0]");

    if (alpha == 1.0) {
        if (beta == 1.0) return std::exp(z);
        if (beta == 2.0) return (z == 0.0) ? 1.0 : (std::exp(z) - 1.0) / z;
        // generic beta via series; for alpha = 1 terms decay factorially
        return ml_series(alpha, beta, z);
    }

    const double x = -z;
    if (x <= std::pow(7.0, alpha)) return ml_series(alpha, beta, z);
    if (beta > 1.0) {
        // E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z
        const double lower = mittag_leffler(alpha, beta - alpha, z);
        return (lower - 1.0 / gamma_fn(beta - alpha)) / z;
    }
    return ml_integral(alpha, beta, x);
}

double scalar_mild_solution(double alpha, double lambda, const std::vector<double>& samples,
                            const TemporalGrid& grid, double t) {
    if (lambda < 0.0) throw std::invalid_argument("scalar_mild_solution: lambda must be >= 0");
    if (static_cast<int>(samples.size()) != grid.J)
        throw std::invalid_argument("scalar_mild_solution: need one sample per slice");
    if (t < 0.0 || t > grid.T + 1e-12 * grid.T)
        throw std::invalid_argument("scalar_mild_solution: t outside [0,T]");
    // kernel primitive: \int_0^s r^{a-1} E_{a,a}(-l r^a) dr = s^a E_{a,a+1}(-l s^a)
    auto K = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double sa = std::pow(s, alpha);
        return sa * mittag_leffler(alpha, alpha + 1.0, -lambda * sa);
    };
    double u = 0.0;
    const double tau = grid.tau();
    for (int j = 1; j <= grid.J; ++j) {
        const double t0 = (j - 1) * tau;
        if (t0 >= t) break;
        const double t1 = std::min(t, j * tau);
        u += samples[j - 1] * (K(t - t0) - K(t - t1));
    }
    return u;
}

double scalar_dirac_solution(double alpha, double lambda, double v, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("scalar_dirac_solution: t must be positive");
    const double ta = std::pow(t, alpha);
    return v * std::pow(t, alpha - 1.0) * mittag_leffler(alpha, alpha, -lambda * ta);
}

std::vector<double> scalar_l1_solve(double alpha, double lambda,
                                    const std::vector<double>& slice_integrals,
                                    const TemporalGrid& grid) {
    const int J = grid.J;
    if (static_cast<int>(slice_integrals.size()) != J)
        throw std::invalid_argument("scalar_l1_solve: need one slice integral per slice");
    const double tau = grid.tau();
    std::vector<double> w(J, 0.0);
    if (alpha == 1.0) {
        // backward Euler: (w_k - w_{k-1}) + tau lambda w_k = slice integral
        double prev = 0.0;
        for (int k = 1; k <= J; ++k) {
            w[k - 1] = (prev + slice_integrals[k - 1]) / (1.0 + tau * lambda);
            prev = w[k - 1];
        }
        return w;
    }
    const FracWeights fw = build_l1_weights(alpha, J);
    const double ta = std::pow(tau, alpha);
    const double diag = fw.b[1] + ta * lambda;
    for (int k = 1; k <= J; ++k) {
        double hist = 0.0;
        for (int j = 1; j < k; ++j) hist += fw.d[k - j] * w[j - 1];
        w[k - 1] = (std::pow(tau, alpha - 1.0) * slice_integrals[k - 1] - hist) / diag;
    }
    return w;
}

namespace {

// dense column-major helpers for the small eigensolver
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;
    double& at(int i, int j) { return a[j * n + i]; }
    double at(int i, int j) const { return a[j * n + i]; }
};

DenseMatrix to_dense(const SparseOperator& op) {
    DenseMatrix d;
    d.n = op.dim();
    d.a.assign(static_cast<std::size_t>(d.n) * d.n, 0.0);
    for (int i = 0; i < d.n; ++i)
        for (int k = op.row_offsets()[i]; k < op.row_offsets()[i + 1]; ++k)
            d.at(i, op.cols()[k]) = op.vals()[k];
    return d;
}

// in-place Cholesky M = L L^T (lower)
void cholesky(DenseMatrix& m) {
    const int n = m.n;
    for (int j = 0; j < n; ++j) {
        double d = m.at(j, j);
        for (int k = 0; k < j; ++k) d -= m.at(j, k) * m.at(j, k);
        if (d <= 0.0) throw std::runtime_error("dense_generalized_eig: mass not SPD");
        m.at(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = m.at(i, j);
            for (int k = 0; k < j; ++k) s -= m.at(i, k) * m.at(j, k);
            m.at(i, j) = s / m.at(j, j);
        }
        for (int i = 0; i < j; ++i) m.at(i, j) = 0.0;
    }
}

// cyclic Jacobi eigensolver for a symmetric dense matrix; V accumulates rotations
void jacobi_eigen(DenseMatrix& s, DenseMatrix& v) {
    const int n = s.n;
    v.n = n;
    v.a.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += s.at(i, j) * s.at(i, j);
        if (off < 1e-26 * n * n) return;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = s.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = 0.5 * (s.at(q, q) - s.at(p, p)) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < n; ++k) {
                    const double skp = s.at(k, p), skq = s.at(k, q);
                    s.at(k, p) = c * skp - sn * skq;
                    s.at(k, q) = sn * skp + c * skq;
                }
                for (int k = 0; k < n; ++k) {
                    const double spk = s.at(p, k), sqk = s.at(q, k);
                    s.at(p, k) = c * spk - sn * sqk;
                    s.at(q, k) = sn * spk + c * sqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - sn * vkq;
                    v.at(k, q) = sn * vkp + c * vkq;
                }
            }
    }
    throw std::runtime_error("dense_generalized_eig: Jacobi sweeps did not converge");
}

}  // namespace

EigenBasis dense_generalized_eig(const SparseOperator& A_interior,
                                 const SparseOperator& M_interior) {
    const int n = A_interior.dim();
    if (M_interior.dim() != n)
        throw std::invalid_argument("dense_generalized_eig: dimension mismatch");
    if (n > 200)
        throw std::invalid_argument("dense_generalized_eig: restricted to dimensions <= 200");

    DenseMatrix L = to_dense(M_interior);
    cholesky(L);
    DenseMatrix A = to_dense(A_interior);

    // C = L^{-1} A L^{-T}
    // forward-solve L X = A (columns), then L Y = X^T
    auto forward_cols = [&](DenseMatrix& m) {
        for (int j = 0; j < m.n; ++j)
            for (int i = 0; i < m.n; ++i) {
                double s = m.at(i, j);
                for (int k = 0; k < i; ++k) s -= L.at(i, k) * m.at(k, j);
                m.at(i, j) = s / L.at(i, i);
            }
    };
    forward_cols(A);
    // transpose in place, then forward-solve again
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) std::swap(A.at(i, j), A.at(j, i));
    forward_cols(A);
    // symmetrize against roundoff
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double m = 0.5 * (A.at(i, j) + A.at(j, i));
            A.at(i, j) = A.at(j, i) = m;
        }

    DenseMatrix Q;
    jacobi_eigen(A, Q);

    // back-transform: V = L^{-T} Q
    for (int j = 0; j < n; ++j)
        for (int i = n - 1; i >= 0; --i) {
            double s = Q.at(i, j);
            for (int k = i + 1; k < n; ++k) s -= L.at(k, i) * Q.at(k, j);
            Q.at(i, j) = s / L.at(i, i);
        }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return A.at(a, a) < A.at(b, b); });

    EigenBasis basis;
    basis.n = n;
    basis.eigenvalues.resize(n);
    basis.eigenvectors.resize(n, Vector(n));
    for (int j = 0; j < n; ++j) {
        basis.eigenvalues[j] = A.at(order[j], order[j]);
        for (int i = 0; i < n; ++i) basis.eigenvectors[j][i] = Q.at(i, order[j]);
    }
    return basis;
}

Vector matrix_mild_oracle(const EigenBasis& basis, double alpha,
                          const std::vector<Vector>& slice_loads, const TemporalGrid& grid,
                          double t) {
    const int n = basis.n;
    Vector out(n, 0.0);
    std::vector<double> modal(grid.J);
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < grid.J; ++k) modal[k] = dot(basis.eigenvectors[m], slice_loads[k]);
        const double c = scalar_mild_solution(alpha, basis.eigenvalues[m], modal, grid, t);
        for (int i = 0; i < n; ++i) out[i] += c * basis.eigenvectors[m][i];
    }
    return out;
}

Vector matrix_mild_oracle_dirac(const EigenBasis& basis, double alpha, const Vector& payload,
                                double t) {
    const int n = basis.n;
    Vector out(n, 0.0);
    for (int m = 0; m < n; ++m) {
        const double amp = dot(basis.eigenvectors[m], payload);
        const double c = scalar_dirac_solution(alpha, basis.eigenvalues[m], amp, t);
        for (int i = 0; i < n; ++i) out[i] += c * basis.eigenvectors[m][i];
    }
    return out;
}

}  // namespace fracdirc
