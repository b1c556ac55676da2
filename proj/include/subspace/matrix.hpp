#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace subspace {

/// Dense real matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    /// Zero-filled rows x cols matrix; both dimensions must be >= 1.
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> values);
    static Matrix from_columns(const std::vector<std::vector<double>>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::vector<double> column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const double> values);

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    bool all_finite() const noexcept;
    Matrix transposed() const;
    /// Copy of the rows x cols block starting at (row0, col0).
    Matrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double factor);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(double factor, Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);

/// Stack A on top of B (equal column counts).
Matrix vstack(const Matrix& top, const Matrix& bottom);

/// sqrt(sum of squared entries).
double frobenius_norm(const Matrix& m);

/// Largest absolute entry-wise difference.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace subspace
