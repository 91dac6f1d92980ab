#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fracdirc/fem.hpp"
#include "fracdirc/sparse.hpp"
#include "fracdirc/temporal.hpp"

namespace fracdirc {

/// Element of W_tau(V_h): one coefficient vector per time slice, constant on
/// (t_{j-1}, t_j). The final-time observation reads the last slice.
struct Trajectory {
    TemporalGrid grid;
    std::vector<Vector> slices;

    const Vector& at_final() const { return slices.back(); }
};

/// Piecewise-constant Dirac surrogate. Initial kind is payload * t_1^{-1} on
/// the first slice, terminal kind is payload * tau^{-1} on the last slice.
/// The payload is a load vector (already mass-integrated).
struct DiracApprox {
    enum class Kind { Initial, Terminal };
    Kind kind = Kind::Initial;
    Vector payload;
};

/// Piecewise-constant-in-time boundary coefficient field with box bounds.
struct BoundaryControl {
    TemporalGrid grid;
    std::vector<std::vector<double>> slices;
    double lower = 0.0;
    double upper = 0.0;

    static BoundaryControl constant(const TemporalGrid& grid, int boundary_size, double value,
                                    double lower, double upper);
};

/// Source of a forward/adjoint solve. Loads are slice values in load
/// currency (the right-hand side uses their exact slice integrals).
class SourceTerm {
public:
    static SourceTerm none() { return SourceTerm{}; }
    static SourceTerm loads(const Trajectory& t) {
        SourceTerm s;
        s.loads_ = &t;
        return s;
    }
    static SourceTerm dirac(const DiracApprox& d) {
        SourceTerm s;
        s.dirac_ = &d;
        return s;
    }

    // slice integral of the load over (t_{k-1}, t_k); empty vector means zero
    Vector slice_integral(int k, const TemporalGrid& grid) const;

private:
    const Trajectory* loads_ = nullptr;
    const DiracApprox* dirac_ = nullptr;
};

struct SolveOptions {
    double cg_tol = 1e-12;
    int cg_max_iter = 100000;
    bool want_time_residuals = false;
};

/// Forward trajectory and, when requested, the nodal time residuals
/// r_k = tau^{-alpha} (b_1 W_k + sum_{j<k} d_{k-j} W_j) for alpha < 1 or
/// (W_k - W_{k-1})/tau for alpha = 1 (for the adjoint these come out
/// right-sided after the time reversal).
struct EvolutionResult {
    Trajectory trajectory;
    std::vector<Vector> time_residuals;
    int max_cg_iterations = 0;
};

/// Discrete solution operator: L1 scheme for alpha < 1, dG(0)/backward Euler
/// for alpha = 1, fully discretized with P1 elements. Dirichlet data enters
/// by row replacement at boundary nodes (prescribed values moved to the
/// right-hand side); absent data means the homogeneous problem.
EvolutionResult forward_solve(double alpha, const TemporalGrid& grid, const FemSpace& space,
                              const SourceTerm& source,
                              const BoundaryControl* dirichlet_data = nullptr,
                              const SolveOptions& opts = {});

/// Time mirror of forward_solve with homogeneous boundary conditions.
EvolutionResult adjoint_solve(double alpha, const TemporalGrid& grid, const FemSpace& space,
                              const SourceTerm& terminal, const SolveOptions& opts = {});

/// The two time integrals of the discrete duality identity:
/// first = \int (S f, g), second = \int <f, S* g>, both as tau-weighted sums.
std::pair<double, double> duality_pairing(const Trajectory& f_loads,
                                          const Trajectory& forward_of_f,
                                          const Trajectory& g_loads,
                                          const Trajectory& adjoint_of_g);

enum class TrajectoryNorm { LinfL2, L1H01, L2Boundary };

/// Norm of (a - b) after extending both as piecewise constants onto the
/// common refinement of the two grids (interval counts must divide).
double trajectory_norm(const Trajectory& a, const Trajectory& b, TrajectoryNorm norm,
                       const FemSpace& space);

}  // namespace fracdirc
