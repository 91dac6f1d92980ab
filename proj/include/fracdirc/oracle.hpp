#pragma once

#include <vector>

#include "fracdirc/sparse.hpp"
#include "fracdirc/temporal.hpp"

namespace fracdirc {

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z <= 0.
/// Power series with compensated summation where the alternating terms stay
/// small (|z| <= 7^alpha), otherwise the Hankel-contour integral
/// representation collapsed onto the positive real axis; beta > 1 is reduced
/// by the recurrence E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a))/z.
/// Validated for alpha in (0,1], beta in (0, 2.5], z in [-200, 0]; absolute
/// error <= 1e-10.
double mittag_leffler(double alpha, double beta, double z);

/// Exact mild solution of the scalar equation D^alpha u + lambda u = g with
/// piecewise-constant g on the grid:
/// slice contributions via s^alpha E_{alpha,alpha+1}(-lambda s^alpha).
double scalar_mild_solution(double alpha, double lambda, const std::vector<double>& samples,
                            const TemporalGrid& grid, double t);

/// Mild solution of the same equation with Dirac datum v delta_0:
/// v t^{alpha-1} E_{alpha,alpha}(-lambda t^alpha), t > 0.
double scalar_dirac_solution(double alpha, double lambda, double v, double t);

/// Scalar L1 / backward-Euler stepping for D^alpha w + lambda w = load,
/// w(0) = 0. `slice_integrals[k]` = \int_{t_k}^{t_{k+1}} load dt. This is the
/// temporal scheme in its simplest incarnation; the evolution module must
/// agree with it modewise (eigen-equivalence).
std::vector<double> scalar_l1_solve(double alpha, double lambda,
                                    const std::vector<double>& slice_integrals,
                                    const TemporalGrid& grid);

/// Dense generalized eigendecomposition of the SPD pencil (A, M):
/// A V = M V diag(lambda), V^T M V = I, eigenvalues ascending.
struct EigenBasis {
    int n = 0;
    std::vector<double> eigenvalues;
    std::vector<Vector> eigenvectors;  // M-orthonormal columns
};

EigenBasis dense_generalized_eig(const SparseOperator& A_interior,
                                 const SparseOperator& M_interior);

/// Continuous-in-time exact solution of the semidiscrete system
/// M u' (fractional) + A u = load(t), evaluated at time t by modewise mild
/// solutions through `basis`. Loads are given per slice in load currency; a
/// Dirac-at-zero payload uses the scalar Dirac kernel.
Vector matrix_mild_oracle(const EigenBasis& basis, double alpha,
                          const std::vector<Vector>& slice_loads, const TemporalGrid& grid,
                          double t);
Vector matrix_mild_oracle_dirac(const EigenBasis& basis, double alpha, const Vector& payload,
                                double t);

}  // namespace fracdirc
