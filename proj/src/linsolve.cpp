#include "nncross/linsolve.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nncross {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("SparseMatrix: dimensions must be positive");
}

void SparseMatrix::add(int row, int col, double value) {
    if (finalized_) throw std::logic_error("SparseMatrix::add after finalize");
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw std::out_of_range("SparseMatrix::add: index out of range");
    coo_rows_.push_back(row);
    coo_cols_.push_back(col);
    coo_vals_.push_back(value);
}

void SparseMatrix::finalize() {
    if (finalized_) return;
    std::vector<size_t> order(coo_rows_.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (coo_rows_[a] != coo_rows_[b]) return coo_rows_[a] < coo_rows_[b];
        return coo_cols_[a] < coo_cols_[b];
    });
    row_offsets_.assign(static_cast<size_t>(rows_) + 1, 0);
    int cur_row = -1, cur_col = -1;
    for (size_t k : order) {
        const int r = coo_rows_[k];
        const int c = coo_cols_[k];
        if (r == cur_row && c == cur_col) {
            values_.back() += coo_vals_[k];
            continue;
        }
        col_indices_.push_back(c);
        values_.push_back(coo_vals_[k]);
        cur_row = r;
        cur_col = c;
        row_offsets_[static_cast<size_t>(r) + 1] = static_cast<int>(values_.size());
    }
    // turn per-row end markers into offsets (empty rows inherit the previous offset)
    for (size_t r = 1; r < row_offsets_.size(); ++r)
        row_offsets_[r] = std::max(row_offsets_[r], row_offsets_[r - 1]);
    coo_rows_.clear();
    coo_cols_.clear();
    coo_vals_.clear();
    finalized_ = true;
}

double SparseMatrix::max_abs() const {
    if (!finalized_) throw std::logic_error("SparseMatrix::max_abs before finalize");
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (!finalized_) throw std::logic_error("SparseMatrix::multiply before finalize");
    if (static_cast<int>(x.size()) != cols_ || static_cast<int>(y.size()) != rows_)
        throw std::invalid_argument("SparseMatrix::multiply: dimension mismatch");
    for (int r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (int k = row_offsets_[r]; k < row_offsets_[static_cast<size_t>(r) + 1]; ++k)
            acc += values_[k] * x[static_cast<size_t>(col_indices_[k])];
        y[static_cast<size_t>(r)] = acc;
    }
}

struct Factorization::Impl {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    int dim = 0;
};

Factorization::Factorization(const SparseMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("factorize: matrix not square");
    SparseMatrix copy = a;  // allow callers to pass an un-finalized builder
    copy.finalize();

    Eigen::SparseMatrix<double> m(copy.rows(), copy.cols());
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(copy.entries().size());
    for (int r = 0; r < copy.rows(); ++r)
        for (int k = copy.row_offsets()[r]; k < copy.row_offsets()[static_cast<size_t>(r) + 1]; ++k)
            trips.emplace_back(r, copy.col_indices()[k], copy.entries()[k]);
    m.setFromTriplets(trips.begin(), trips.end());

    auto impl = std::make_shared<Impl>();
    impl->dim = copy.rows();
    impl->ldlt.compute(m);
    if (impl->ldlt.info() != Eigen::Success)
        throw SingularMatrixError("factorize: zero pivot encountered");
    const double threshold = 1e-14 * copy.max_abs();
    const auto& d = impl->ldlt.vectorD();
    for (int k = 0; k < d.size(); ++k)
        if (std::abs(d[k]) <= threshold)
            throw SingularMatrixError("factorize: pivot below singularity threshold");
    impl_ = std::move(impl);
}

int Factorization::dimension() const { return impl_->dim; }

std::vector<double> Factorization::solve(std::span<const double> b) const {
    if (static_cast<int>(b.size()) != impl_->dim)
        throw std::invalid_argument("Factorization::solve: dimension mismatch");
    Eigen::Map<const Eigen::VectorXd> rhs(b.data(), impl_->dim);
    Eigen::VectorXd x = impl_->ldlt.solve(rhs);
    return std::vector<double>(x.data(), x.data() + x.size());
}

std::vector<double> cg_solve(const SparseMatrix& a, std::span<const double> b,
                             double rel_tol, int max_iter) {
    if (a.rows() != a.cols()) throw std::invalid_argument("cg_solve: matrix not square");
    if (static_cast<int>(b.size()) != a.rows())
        throw std::invalid_argument("cg_solve: dimension mismatch");
    const int n = a.rows();
    if (max_iter < 0) max_iter = 10 * n;

    std::vector<double> x(static_cast<size_t>(n), 0.0);
    std::vector<double> r(b.begin(), b.end());
    std::vector<double> p = r;
    std::vector<double> ap(static_cast<size_t>(n), 0.0);

    auto dot = [n](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += u[static_cast<size_t>(k)] * v[static_cast<size_t>(k)];
        return s;
    };

    double rr = dot(r, r);
    const double stop = rel_tol * rel_tol * rr;
    if (rr == 0.0) return x;
    for (int it = 0; it < max_iter && rr > stop; ++it) {
        a.multiply(p, ap);
        const double alpha = rr / dot(p, ap);
        for (int k = 0; k < n; ++k) {
            x[static_cast<size_t>(k)] += alpha * p[static_cast<size_t>(k)];
            r[static_cast<size_t>(k)] -= alpha * ap[static_cast<size_t>(k)];
        }
        const double rr_next = dot(r, r);
        const double beta = rr_next / rr;
        rr = rr_next;
        for (int k = 0; k < n; ++k)
            p[static_cast<size_t>(k)] = r[static_cast<size_t>(k)] + beta * p[static_cast<size_t>(k)];
    }
    return x;
}

}  // namespace nncross
