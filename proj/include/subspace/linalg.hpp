#pragma once
// Dense SVD / GSVD and the energy functionals built on them.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "subspace/matrix.hpp"

namespace subspace::linalg {

/// full: square orthogonal bases (m x m, n x n). thin: only the min(m,n)
/// columns paired with singular values.
enum class BasisMode { full, thin };

/// A = sum_i sigma_i u_i v_i^T with descending sigma.
struct SpectrumResult {
    Matrix left_basis;                    // m x m (full) or m x min(m,n) (thin)
    Matrix right_basis;                   // n x n (full) or n x min(m,n) (thin)
    std::vector<double> singular_values;  // min(m,n) entries, non-increasing
    std::size_t numerical_rank = 0;       // #{sigma_i > rank_tolerance * sigma_1}
    double rank_tolerance = 0.0;          // relative to sigma_1

    std::size_t rows() const noexcept { return left_basis.rows(); }
    std::size_t cols() const noexcept { return right_basis.rows(); }
};

/// Default relative rank tolerance: max(m, n) * machine epsilon.
double default_rank_tolerance(std::size_t rows, std::size_t cols) noexcept;

/// One-sided Jacobi SVD. Singular vectors follow a fixed sign convention:
/// the largest-magnitude entry of each left vector is nonnegative (first one
/// on ties) and the paired right vector carries the same sign flip.
SpectrumResult svd(const Matrix& a, std::optional<double> rank_tolerance = std::nullopt,
                   BasisMode mode = BasisMode::full);

/// Singular values only (no basis accumulation), descending.
std::vector<double> singular_values(const Matrix& a);

/// Numerical rank of a descending spectrum at a relative tolerance.
std::size_t numerical_rank(std::span<const double> descending, double relative_tolerance) noexcept;

/// Marker for beta_i = 0 in a generalized spectrum.
inline constexpr double infinite_value = std::numeric_limits<double>::infinity();
inline bool is_infinite_value(double v) noexcept { return v == infinite_value; }

/// A = U C X^T, B = V S X^T with C^T C + S^T S = I.
struct GsvdResult {
    Matrix u_basis;  // m x m (full) or m x n (thin)
    Matrix v_basis;  // s x s (full) or s x min(s, n) (thin)
    Matrix x_factor; // n x n, nonsingular
    std::vector<double> alpha;               // diag(C), n entries
    std::vector<double> beta;                // diag(S), n entries
    std::vector<double> generalized_values;  // alpha_i / beta_i, non-increasing, infinite_value first

    std::size_t a_rows() const noexcept { return u_basis.rows(); }
    std::size_t b_rows() const noexcept { return v_basis.rows(); }
    std::size_t cols() const noexcept { return x_factor.rows(); }
    /// Row of S holding beta_i: i - (n - s) when s < n (the first n - s betas are zero).
    std::size_t s_row_offset() const noexcept { return cols() > b_rows() ? cols() - b_rows() : 0; }

    Matrix c_matrix() const;  // m x n
    Matrix s_matrix() const;  // s x n
    Matrix reconstruct_a() const;
    Matrix reconstruct_b() const;
    /// sum_{i=first}^{last} alpha_i u_i x_i^T (1-based, inclusive); zero matrix if first > last.
    Matrix a_band(std::size_t first, std::size_t last) const;
};

/// Generalized SVD through the CS decomposition of the stacked QR factor.
/// Requires A m x n with m >= n, B s x n, and [A; B] of full column rank.
GsvdResult gsvd(const Matrix& a, const Matrix& b, BasisMode mode = BasisMode::full);

/// ||A||_F^2.
double frobenius_energy(const Matrix& a);

/// ||q^T A||^2 = sum_k (q^T a_k)^2 for a unit vector q of length rows(A).
double oriented_energy(const Matrix& a, std::span<const double> q);

/// sum_{i=first}^{last} sigma_i u_i v_i^T, 1-based inclusive,
/// 1 <= first <= last <= numerical_rank.
Matrix truncated_sum(const SpectrumResult& spec, std::size_t first, std::size_t last);

/// Same sum with the range clipped to [1, numerical_rank]; an empty range
/// gives the zero matrix.
Matrix band_sum(const SpectrumResult& spec, std::size_t first, std::size_t last);

}  // namespace subspace::linalg
