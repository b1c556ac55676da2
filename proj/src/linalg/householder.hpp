#pragma once
// Column-major work storage and Householder helpers shared by the SVD and
// GSVD drivers.

#include <cstddef>
#include <span>
#include <vector>

#include "subspace/matrix.hpp"

namespace subspace::linalg::detail {

/// `count` contiguous columns, each `length` long.
struct ColumnBlock {
    std::size_t length = 0;
    std::size_t count = 0;
    std::vector<double> data;

    ColumnBlock() = default;
    ColumnBlock(std::size_t length_, std::size_t count_) : length(length_), count(count_), data(length_ * count_, 0.0) {}

    double* col(std::size_t j) noexcept { return data.data() + j * length; }
    const double* col(std::size_t j) const noexcept { return data.data() + j * length; }
    std::span<double> column(std::size_t j) noexcept { return {col(j), length}; }
    std::span<const double> column(std::size_t j) const noexcept { return {col(j), length}; }

    static ColumnBlock identity(std::size_t n);
    static ColumnBlock columns_of(const Matrix& m);
    static ColumnBlock rows_of(const Matrix& m);
    /// Row-major matrix whose columns are this block's columns.
    Matrix to_matrix() const;
};

struct ThinQr {
    ColumnBlock q;  // length x count, orthonormal columns
    Matrix r;       // count x count, upper triangular
};

/// Householder QR of a tall block (length >= count).
ThinQr householder_qr(ColumnBlock a);

/// `extra` unit vectors orthogonal to the span of `basis` and to each other.
/// `basis` must hold orthonormal columns.
ColumnBlock orthonormal_complement(const ColumnBlock& basis, std::size_t extra);

/// One-sided (Hestenes) Jacobi sweeps: rotates column pairs of `work` until
/// all are mutually orthogonal; the same rotations are applied to `accumulate`
/// when it is non-null. Returns the number of sweeps used.
std::size_t one_sided_jacobi(ColumnBlock& work, ColumnBlock* accumulate);

}  // namespace subspace::linalg::detail
