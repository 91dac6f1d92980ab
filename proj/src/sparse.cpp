#include "fracdirc/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracdirc {

SparseOperator::SparseOperator(int dim, std::vector<int> row_offsets, std::vector<int> cols,
                               std::vector<double> vals, bool symmetric)
    : dim_(dim),
      row_offsets_(std::move(row_offsets)),
      cols_(std::move(cols)),
      vals_(std::move(vals)),
      symmetric_(symmetric) {
    if (static_cast<int>(row_offsets_.size()) != dim_ + 1)
        throw std::invalid_argument("SparseOperator: row offset count mismatch");
    if (cols_.size() != vals_.size())
        throw std::invalid_argument("SparseOperator: cols/vals size mismatch");
}

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
        throw std::invalid_argument("SparseOperator::apply: dimension mismatch");
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) s += vals_[k] * x[cols_[k]];
        y[i] = s;
    }
}

Vector SparseOperator::apply(const Vector& x) const {
    Vector y(dim_);
    apply(x, y);
    return y;
}

double SparseOperator::coeff(int i, int j) const {
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
        if (cols_[k] == j) return vals_[k];
    return 0.0;
}

Vector SparseOperator::diagonal() const {
    Vector d(dim_, 0.0);
    for (int i = 0; i < dim_; ++i)
        for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
            if (cols_[k] == i) d[i] = vals_[k];
    return d;
}

double SparseOperator::entry_sum() const {
    double s = 0.0;
    for (double v : vals_) s += v;
    return s;
}

SparseOperator SparseOperator::linear_combination(double a, const SparseOperator& lhs, double b,
                                                  const SparseOperator& rhs) {
    if (lhs.dim() != rhs.dim())
        throw std::invalid_argument("linear_combination: dimension mismatch");
    std::vector<Triplet> t;
    t.reserve(lhs.vals_.size() + rhs.vals_.size());
    for (int i = 0; i < lhs.dim_; ++i)
        for (int k = lhs.row_offsets_[i]; k < lhs.row_offsets_[i + 1]; ++k)
            t.push_back({i, lhs.cols_[k], a * lhs.vals_[k]});
    for (int i = 0; i < rhs.dim_; ++i)
        for (int k = rhs.row_offsets_[i]; k < rhs.row_offsets_[i + 1]; ++k)
            t.push_back({i, rhs.cols_[k], b * rhs.vals_[k]});
    return assemble_from_triplets(lhs.dim(), std::move(t), lhs.symmetric_ && rhs.symmetric_);
}

SparseOperator assemble_from_triplets(int dim, std::vector<Triplet> triplets, bool symmetric) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        if (a.row != b.row) return a.row < b.row;
        if (a.col != b.col) return a.col < b.col;
        return a.value < b.value;
    });
    std::vector<int> offsets(dim + 1, 0);
    std::vector<int> cols;
    std::vector<double> vals;
    cols.reserve(triplets.size());
    vals.reserve(triplets.size());
    std::size_t i = 0;
    while (i < triplets.size()) {
        const int r = triplets[i].row;
        const int c = triplets[i].col;
        double s = 0.0;
        while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c)
            s += triplets[i++].value;
        cols.push_back(c);
        vals.push_back(s);
        offsets[r + 1] = static_cast<int>(cols.size());
    }
    for (int r = 0; r < dim; ++r) offsets[r + 1] = std::max(offsets[r + 1], offsets[r]);
    return SparseOperator(dim, std::move(offsets), std::move(cols), std::move(vals), symmetric);
}

SparseOperator extract_block(const SparseOperator& op, const std::vector<int>& rows,
                             const std::vector<int>& cols, bool symmetric) {
    std::vector<int> col_map(op.dim(), -1);
    for (std::size_t j = 0; j < cols.size(); ++j) col_map[cols[j]] = static_cast<int>(j);
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int r = rows[i];
        for (int k = op.row_offsets()[r]; k < op.row_offsets()[r + 1]; ++k) {
            const int cj = col_map[op.cols()[k]];
            if (cj >= 0) t.push_back({static_cast<int>(i), cj, op.vals()[k]});
        }
    }
    return assemble_from_triplets(static_cast<int>(rows.size()), std::move(t), symmetric);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

CgReport cg_solve(const SparseOperator& op, std::span<const double> rhs, std::span<double> x,
                  double tol, int max_iter, std::span<const double> x0) {
    const int n = op.dim();
    if (static_cast<int>(rhs.size()) != n || static_cast<int>(x.size()) != n)
        throw std::invalid_argument("cg_solve: dimension mismatch");

    CgReport report;
    const double rhs_norm = norm2(rhs);
    if (rhs_norm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        report.converged = true;
        return report;
    }

    Vector inv_diag = op.diagonal();
    for (double& d : inv_diag) d = (d != 0.0) ? 1.0 / d : 1.0;

    Vector r(n), z(n), p(n), q(n);
    if (!x0.empty()) {
        std::copy(x0.begin(), x0.end(), x.begin());
        op.apply(x, q);
        for (int i = 0; i < n; ++i) r[i] = rhs[i] - q[i];
    } else {
        std::fill(x.begin(), x.end(), 0.0);
        std::copy(rhs.begin(), rhs.end(), r.begin());
    }

    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot(r, z);

    for (int it = 0; it < max_iter; ++it) {
        if (norm2(r) <= tol * rhs_norm) {
            // confirm with a freshly computed residual before declaring victory
            op.apply(x, q);
            for (int i = 0; i < n; ++i) q[i] = rhs[i] - q[i];
            const double true_res = norm2(q) / rhs_norm;
            if (true_res <= tol) {
                report.iterations = it;
                report.relative_residual = true_res;
                report.converged = true;
                return report;
            }
            r.assign(q.begin(), q.end());
            for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
            p = z;
            rz = dot(r, z);
        }
        op.apply(p, q);
        const double pq = dot(p, q);
        if (pq <= 0.0) break;  // not SPD on this subspace
        const double alpha = rz / pq;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        report.iterations = it + 1;
    }

    op.apply(x, q);
    for (int i = 0; i < n; ++i) q[i] = rhs[i] - q[i];
    report.relative_residual = norm2(q) / rhs_norm;
    report.converged = report.relative_residual <= tol;
    return report;
}

}  // namespace fracdirc
