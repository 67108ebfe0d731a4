#include "brinkman/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "brinkman/io.hpp"

namespace brinkman {

SparseMatrix::SparseMatrix(std::size_t n_rows, std::size_t n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), row_ptr_(n_rows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t n_rows, std::size_t n_cols, std::vector<Triplet> triplets) {
    for (const auto& t : triplets) {
        if (t.row >= n_rows || t.col >= n_cols) throw std::out_of_range("from_triplets: entry outside matrix");
    }
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m(n_rows, n_cols);
    m.col_idx_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    std::size_t k = 0;
    for (std::size_t r = 0; r < n_rows; ++r) {
        while (k < triplets.size() && triplets[k].row == r) {
            const std::size_t c = triplets[k].col;
            double v = 0.0;
            while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) v += triplets[k++].value;
            m.col_idx_.push_back(c);
            m.values_.push_back(v);
        }
        m.row_ptr_[r + 1] = m.col_idx_.size();
    }
    return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    std::vector<double> ones(n, 1.0);
    return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
    SparseMatrix m(d.size(), d.size());
    m.col_idx_.resize(d.size());
    m.values_.assign(d.begin(), d.end());
    for (std::size_t r = 0; r < d.size(); ++r) {
        m.col_idx_[r] = r;
        m.row_ptr_[r + 1] = r + 1;
    }
    return m;
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
    if (r >= n_rows_ || c >= n_cols_) throw std::out_of_range("SparseMatrix::at");
    const auto cols = row_cols(r);
    const auto it = std::lower_bound(cols.begin(), cols.end(), c);
    if (it == cols.end() || *it != c) return 0.0;
    return values_[row_ptr_[r] + static_cast<std::size_t>(it - cols.begin())];
}

std::vector<double> SparseMatrix::diagonal_values() const {
    std::vector<double> d(std::min(n_rows_, n_cols_), 0.0);
    for (std::size_t r = 0; r < d.size(); ++r) d[r] = at(r, r);
    return d;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    if (x.size() != n_cols_ || y.size() != n_rows_) throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
    for (std::size_t r = 0; r < n_rows_; ++r) {
        double s = 0.0;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
        y[r] = s;
    }
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const {
    std::vector<double> y(n_rows_);
    multiply(x, y);
    return y;
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t r = 0; r < n_rows_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({col_idx_[k], r, values_[k]});
    }
    return from_triplets(n_cols_, n_rows_, std::move(t));
}

SparseMatrix SparseMatrix::scaled(double s) const {
    SparseMatrix m = *this;
    for (double& v : m.values_) v *= s;
    return m;
}

SparseMatrix SparseMatrix::row_scaled(std::span<const double> d) const {
    if (d.size() != n_rows_) throw std::invalid_argument("row_scaled: size mismatch");
    SparseMatrix m = *this;
    for (std::size_t r = 0; r < n_rows_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) m.values_[k] *= d[r];
    }
    return m;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("SparseMatrix +: shape mismatch");
    auto t = a.triplets();
    auto tb = b.triplets();
    t.insert(t.end(), tb.begin(), tb.end());
    return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

double SparseMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t r = 0; r < n_rows_; ++r) {
        double s = 0.0;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += std::abs(values_[k]);
        best = std::max(best, s);
    }
    return best;
}

bool SparseMatrix::is_symmetric(double tol) const {
    if (n_rows_ != n_cols_) return false;
    for (std::size_t r = 0; r < n_rows_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            if (std::abs(values_[k] - at(col_idx_[k], r)) > tol) return false;
        }
    }
    return true;
}

std::vector<double> SparseMatrix::to_dense() const {
    std::vector<double> d(n_rows_ * n_cols_, 0.0);
    for (std::size_t r = 0; r < n_rows_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) d[r * n_cols_ + col_idx_[k]] = values_[k];
    }
    return d;
}

std::vector<Triplet> SparseMatrix::triplets() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t r = 0; r < n_rows_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({r, col_idx_[k], values_[k]});
    }
    return t;
}

std::string SparseMatrix::to_coordinate_text() const {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << n_rows_ << ' ' << n_cols_ << ' ' << nnz() << '\n';
    for (std::size_t r = 0; r < n_rows_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            out << r << ' ' << col_idx_[k] << ' ' << values_[k] << '\n';
        }
    }
    return out.str();
}

void SparseMatrix::write_coordinate(const std::filesystem::path& path) const {
    write_file_atomic(path, to_coordinate_text());
}

double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double norm_inf(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double relative_residual(const SparseMatrix& a, std::span<const double> x, std::span<const double> b) {
    std::vector<double> r = a * x;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = b[k] - r[k];
    const double nb = norm2(b);
    return nb > 0.0 ? norm2(r) / nb : norm2(r);
}

}  // namespace brinkman
