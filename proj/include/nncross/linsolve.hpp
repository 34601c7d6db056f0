#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace nncross {

class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Square-or-rectangular sparse matrix in compressed row storage.
// Build by accumulating coefficients, then finalize() before use;
// duplicate (row, col) entries are summed.
class SparseMatrix {
public:
    SparseMatrix(int rows, int cols);

    void add(int row, int col, double value);
    void finalize();
    bool finalized() const { return finalized_; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double max_abs() const;

    void multiply(std::span<const double> x, std::span<double> y) const;

    const std::vector<int>& row_offsets() const { return row_offsets_; }
    const std::vector<int>& col_indices() const { return col_indices_; }
    const std::vector<double>& entries() const { return values_; }

private:
    int rows_, cols_;
    bool finalized_ = false;
    std::vector<int> coo_rows_, coo_cols_;
    std::vector<double> coo_vals_;
    std::vector<int> row_offsets_, col_indices_;
    std::vector<double> values_;
};

// Reusable direct factorization of a symmetric positive (semi)definite matrix.
// Throws SingularMatrixError when a pivot falls below 1e-14 * max|A|.
class Factorization {
public:
    explicit Factorization(const SparseMatrix& a);

    std::vector<double> solve(std::span<const double> b) const;
    int dimension() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

inline Factorization factorize(const SparseMatrix& a) { return Factorization(a); }

// Unpreconditioned conjugate gradient; iterates until the relative residual
// drops below rel_tol or 10 * dimension iterations are spent.
std::vector<double> cg_solve(const SparseMatrix& a, std::span<const double> b,
                             double rel_tol = 1e-12, int max_iter = -1);

}  // namespace nncross
