// GSVD via the CS decomposition: [A; B] = Q R, Q1 = U C W^T, Q2 W = V S,
// X = R^T W, so A = U C X^T and B = V S X^T.
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "householder.hpp"
#include "subspace/error.hpp"
#include "subspace/linalg.hpp"
#include "subspace/simd/kernels.hpp"

namespace subspace::linalg {

using detail::ColumnBlock;

namespace {

void validate(const Matrix& a, const Matrix& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::shape, "gsvd: empty matrix");
    if (!a.all_finite() || !b.all_finite()) throw Error(ErrorCode::invalid_input, "gsvd: non-finite entry");
    if (a.cols() != b.cols()) {
        throw Error(ErrorCode::shape, "gsvd: column counts differ (" + std::to_string(a.cols()) + " vs " +
                                          std::to_string(b.cols()) + ")");
    }
    if (a.rows() < a.cols()) {
        throw Error(ErrorCode::shape, "gsvd: A must have at least as many rows as columns (" +
                                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ")");
    }
}

// Adds the outer product coeff * u x^T (u a column of `left`, x a column of `right`).
void add_outer(Matrix& out, const Matrix& left, std::size_t li, const Matrix& right, std::size_t ri, double coeff) {
    if (coeff == 0.0) return;
    const auto& k = simd::kernels();
    const std::vector<double> x = right.column(ri);
    for (std::size_t r = 0; r < out.rows(); ++r) {
        const double c = coeff * left(r, li);
        if (c != 0.0) k.axpy(c, x.data(), out.row(r).data(), x.size());
    }
}

}  // namespace

GsvdResult gsvd(const Matrix& a, const Matrix& b, BasisMode mode) {
    validate(a, b);
    const std::size_t m = a.rows();
    const std::size_t s = b.rows();
    const std::size_t n = a.cols();
    const auto& k = simd::kernels();

    detail::ThinQr qr = detail::householder_qr(ColumnBlock::columns_of(vstack(a, b)));
    const std::vector<double> r_sigma = singular_values(qr.r);
    if (r_sigma.front() == 0.0 || r_sigma.back() <= default_rank_tolerance(m + s, n) * r_sigma.front()) {
        throw Error(ErrorCode::degenerate_pencil, "gsvd: stacked matrix [A; B] is rank deficient");
    }

    Matrix q1(m, n);
    Matrix q2(s, n);
    for (std::size_t c = 0; c < n; ++c) {
        const double* col = qr.q.col(c);
        for (std::size_t r = 0; r < m; ++r) q1(r, c) = col[r];
        for (std::size_t r = 0; r < s; ++r) q2(r, c) = col[m + r];
    }

    SpectrumResult cs = svd(q1, std::nullopt, mode);
    const Matrix& w = cs.right_basis;  // n x n
    const Matrix y = q2 * w;           // s x n, orthogonal columns of norm beta_i

    const double zero_beta = static_cast<double>(m + s) * std::numeric_limits<double>::epsilon();
    std::vector<double> alpha(n), beta(n), y_norm(n), ratio(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> yi = y.column(i);
        y_norm[i] = std::sqrt(k.sum_squares(yi.data(), yi.size()));
        const double c = std::min(cs.singular_values[i], 1.0);
        if (y_norm[i] <= zero_beta) {
            alpha[i] = 1.0;
            beta[i] = 0.0;
        } else {
            const double h = std::hypot(c, y_norm[i]);
            alpha[i] = c / h;
            beta[i] = y_norm[i] / h;
        }
        ratio[i] = beta[i] == 0.0 ? infinite_value : alpha[i] / beta[i];
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t z) { return ratio[x] > ratio[z]; });

    GsvdResult out;
    const std::size_t offset = n > s ? n - s : 0;
    out.alpha.resize(n);
    out.beta.resize(n);
    out.generalized_values.resize(n);
    Matrix w_sorted(n, n);
    Matrix y_sorted(s, n);
    std::vector<double> y_norm_sorted(n);
    out.u_basis = cs.left_basis;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t i = order[pos];
        out.alpha[pos] = alpha[i];
        out.beta[pos] = beta[i];
        out.generalized_values[pos] = ratio[i];
        y_norm_sorted[pos] = y_norm[i];
        for (std::size_t r = 0; r < n; ++r) w_sorted(r, pos) = w(r, i);
        for (std::size_t r = 0; r < s; ++r) y_sorted(r, pos) = y(r, i);
        for (std::size_t r = 0; r < m; ++r) out.u_basis(r, pos) = cs.left_basis(r, i);
    }
    // B has rank <= s: the leading n - s directions carry no B energy.
    for (std::size_t pos = 0; pos < offset; ++pos) {
        out.alpha[pos] = 1.0;
        out.beta[pos] = 0.0;
        out.generalized_values[pos] = infinite_value;
    }

    out.x_factor = qr.r.transposed() * w_sorted;

    // V columns from the normalized Y columns, most reliable (largest beta)
    // first, re-orthogonalized; anything left over comes from the complement.
    const std::size_t v_count = mode == BasisMode::full ? s : std::min(s, n);
    ColumnBlock v(s, v_count);
    std::vector<char> filled(v_count, 0);
    std::vector<std::size_t> accepted;
    for (std::size_t pos = n; pos-- > offset;) {
        if (out.beta[pos] == 0.0) continue;
        const std::size_t j = pos - offset;
        double* col = v.col(j);
        for (std::size_t r = 0; r < s; ++r) col[r] = y_sorted(r, pos) / y_norm_sorted[pos];
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t acc : accepted) k.axpy(-k.dot(v.col(acc), col, s), v.col(acc), col, s);
        const double residual = std::sqrt(k.sum_squares(col, s));
        if (residual < 0.5) {
            std::fill_n(col, s, 0.0);
            continue;
        }
        k.scale(1.0 / residual, col, s);
        accepted.push_back(j);
        filled[j] = 1;
    }
    std::vector<std::size_t> missing;
    for (std::size_t j = 0; j < v_count; ++j)
        if (!filled[j]) missing.push_back(j);
    if (!missing.empty()) {
        ColumnBlock basis(s, accepted.size());
        for (std::size_t i = 0; i < accepted.size(); ++i) std::copy_n(v.col(accepted[i]), s, basis.col(i));
        const ColumnBlock fill = detail::orthonormal_complement(basis, missing.size());
        for (std::size_t i = 0; i < missing.size(); ++i) std::copy_n(fill.col(i), s, v.col(missing[i]));
    }
    out.v_basis = v.to_matrix();
    return out;
}

Matrix GsvdResult::c_matrix() const {
    Matrix c(a_rows(), cols());
    for (std::size_t i = 0; i < cols(); ++i) c(i, i) = alpha[i];
    return c;
}

Matrix GsvdResult::s_matrix() const {
    Matrix s(b_rows(), cols());
    const std::size_t offset = s_row_offset();
    for (std::size_t i = offset; i < cols(); ++i) s(i - offset, i) = beta[i];
    return s;
}

Matrix GsvdResult::a_band(std::size_t first, std::size_t last) const {
    Matrix out(a_rows(), cols());
    first = std::max<std::size_t>(first, 1);
    last = std::min(last, cols());
    for (std::size_t i = first; i <= last; ++i) add_outer(out, u_basis, i - 1, x_factor, i - 1, alpha[i - 1]);
    return out;
}

Matrix GsvdResult::reconstruct_a() const { return a_band(1, cols()); }

Matrix GsvdResult::reconstruct_b() const {
    Matrix out(b_rows(), cols());
    const std::size_t offset = s_row_offset();
    for (std::size_t i = offset; i < cols(); ++i) add_outer(out, v_basis, i - offset, x_factor, i, beta[i]);
    return out;
}

}  // namespace subspace::linalg
