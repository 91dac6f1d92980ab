#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fracdirc {

using Vector = std::vector<double>;

/// Compressed-row sparse matrix. Assembly goes through Triplets so that the
/// result is independent of the order in which element contributions arrive.
class SparseOperator {
public:
    SparseOperator() = default;
    SparseOperator(int dim, std::vector<int> row_offsets, std::vector<int> cols,
                   std::vector<double> vals, bool symmetric);

    int dim() const { return dim_; }
    bool symmetric() const { return symmetric_; }
    const std::vector<int>& row_offsets() const { return row_offsets_; }
    const std::vector<int>& cols() const { return cols_; }
    const std::vector<double>& vals() const { return vals_; }

    void apply(std::span<const double> x, std::span<double> y) const;
    Vector apply(const Vector& x) const;

    double coeff(int i, int j) const;
    Vector diagonal() const;
    double entry_sum() const;

    /// y = a*this + b*other (same dimension; patterns may differ).
    static SparseOperator linear_combination(double a, const SparseOperator& lhs,
                                             double b, const SparseOperator& rhs);

private:
    int dim_ = 0;
    std::vector<int> row_offsets_;
    std::vector<int> cols_;
    std::vector<double> vals_;
    bool symmetric_ = false;
};

struct Triplet {
    int row;
    int col;
    double value;
};

/// Duplicate (row,col) entries are summed after sorting by (row,col,value),
/// so the assembled matrix is bitwise independent of element enumeration.
SparseOperator assemble_from_triplets(int dim, std::vector<Triplet> triplets, bool symmetric);

/// Extract the sub-block rows x cols (index lists into the parent matrix).
SparseOperator extract_block(const SparseOperator& op, const std::vector<int>& rows,
                             const std::vector<int>& cols, bool symmetric);

struct CgReport {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems. Deterministic
/// accumulation order. `x0` (optional) warm-starts the iteration.
CgReport cg_solve(const SparseOperator& op, std::span<const double> rhs, std::span<double> x,
                  double tol, int max_iter, std::span<const double> x0 = {});

// small dense helpers (oracle-scale problems only)
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace fracdirc
