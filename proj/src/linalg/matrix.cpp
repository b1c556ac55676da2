#include "subspace/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subspace/error.hpp"
#include "subspace/simd/kernels.hpp"

namespace subspace {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::shape: return "shape";
    case ErrorCode::range: return "range";
    case ErrorCode::normalization: return "normalization";
    case ErrorCode::degenerate_pencil: return "degenerate-pencil";
    case ErrorCode::degenerate_spectrum: return "degenerate-spectrum";
    case ErrorCode::insufficient_rank: return "insufficient-rank";
    case ErrorCode::order: return "order";
    case ErrorCode::config: return "config";
    case ErrorCode::layout: return "layout";
    case ErrorCode::spec: return "spec";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
    }
    return "unknown";
}

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorCode::parse,
            source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

namespace {

void require_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw Error(ErrorCode::shape, "matrix dimensions must be >= 1, got " + std::to_string(rows) + "x" +
                                          std::to_string(cols));
    }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::shape, std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                          std::to_string(b.cols()));
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_dims(rows, cols);
    data_.assign(rows * cols, 0.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    require_dims(rows, cols);
    if (data_.size() != rows * cols) {
        throw Error(ErrorCode::shape, "entry count " + std::to_string(data_.size()) + " != rows*cols");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    require_dims(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorCode::shape, "ragged initializer list");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) throw Error(ErrorCode::shape, "from_columns: no columns");
    Matrix m(columns.front().size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
    return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

void Matrix::set_column(std::size_t c, std::span<const double> values) {
    if (values.size() != rows_) throw Error(ErrorCode::shape, "set_column: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
    if (row0 + rows > rows_ || col0 + cols > cols_) throw Error(ErrorCode::range, "block out of bounds");
    Matrix b(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((row0 + r) * cols_ + col0), cols,
                    b.data_.begin() + static_cast<std::ptrdiff_t>(r * cols));
    return b;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_shape(*this, other, "operator+=");
    simd::kernels().axpy(1.0, other.data_.data(), data_.data(), data_.size());
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_shape(*this, other, "operator-=");
    simd::kernels().axpy(-1.0, other.data_.data(), data_.data(), data_.size());
    return *this;
}

Matrix& Matrix::operator*=(double factor) {
    simd::kernels().scale(factor, data_.data(), data_.size());
    return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(double factor, Matrix m) { return m *= factor; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        throw Error(ErrorCode::shape, "matrix product: inner dimensions " + std::to_string(lhs.cols()) +
                                          " and " + std::to_string(rhs.rows()));
    }
    const auto& k = simd::kernels();
    Matrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        auto dst = out.row(i);
        for (std::size_t p = 0; p < lhs.cols(); ++p) {
            const double a = lhs(i, p);
            if (a != 0.0) k.axpy(a, rhs.row(p).data(), dst.data(), dst.size());
        }
    }
    return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (top.cols() != bottom.cols()) {
        throw Error(ErrorCode::shape, "vstack: column counts " + std::to_string(top.cols()) + " and " +
                                          std::to_string(bottom.cols()));
    }
    std::vector<double> data(top.data().begin(), top.data().end());
    data.insert(data.end(), bottom.data().begin(), bottom.data().end());
    return Matrix(top.rows() + bottom.rows(), top.cols(), std::move(data));
}

double frobenius_norm(const Matrix& m) { return std::sqrt(simd::sum_squares(m.data())); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

}  // namespace subspace
