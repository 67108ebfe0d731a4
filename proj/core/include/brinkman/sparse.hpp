#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace brinkman {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within a row; explicit zeros may be stored.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t n_rows, std::size_t n_cols);

    /// Duplicate (row, col) entries are summed.
    static SparseMatrix from_triplets(std::size_t n_rows, std::size_t n_cols, std::vector<Triplet> triplets);
    static SparseMatrix identity(std::size_t n);
    static SparseMatrix diagonal(std::span<const double> d);

    std::size_t rows() const noexcept { return n_rows_; }
    std::size_t cols() const noexcept { return n_cols_; }
    std::size_t nnz() const noexcept { return values_.size(); }

    std::span<const std::size_t> row_offsets() const noexcept { return row_ptr_; }
    std::span<const std::size_t> col_indices() const noexcept { return col_idx_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Entries of one row as parallel spans.
    std::span<const std::size_t> row_cols(std::size_t r) const noexcept {
        return {col_idx_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }
    std::span<const double> row_values(std::size_t r) const noexcept {
        return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
    }

    /// Stored value or 0.
    double at(std::size_t r, std::size_t c) const;
    std::vector<double> diagonal_values() const;

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> operator*(std::span<const double> x) const;

    SparseMatrix transpose() const;
    SparseMatrix scaled(double s) const;
    /// Row-wise scaling diag(d) * this.
    SparseMatrix row_scaled(std::span<const double> d) const;

    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);

    double norm_inf() const;
    bool is_symmetric(double tol = 0.0) const;
    /// Row-major dense copy.
    std::vector<double> to_dense() const;

    std::vector<Triplet> triplets() const;

    /// `n_rows n_cols nnz` header followed by zero-based `row col value` lines.
    std::string to_coordinate_text() const;
    void write_coordinate(const std::filesystem::path& path) const;

    friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

private:
    std::size_t n_rows_ = 0;
    std::size_t n_cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

/// ||b - A x||_2 / ||b||_2, or the absolute residual when b = 0.
double relative_residual(const SparseMatrix& a, std::span<const double> x, std::span<const double> b);

}  // namespace brinkman
