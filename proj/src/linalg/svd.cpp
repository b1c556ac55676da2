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

double default_rank_tolerance(std::size_t rows, std::size_t cols) noexcept {
    return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon();
}

std::size_t numerical_rank(std::span<const double> descending, double relative_tolerance) noexcept {
    if (descending.empty()) return 0;
    const double cutoff = relative_tolerance * descending.front();
    return static_cast<std::size_t>(
        std::count_if(descending.begin(), descending.end(), [cutoff](double s) { return s > cutoff; }));
}

namespace {

void require_finite(const Matrix& a, const char* what) {
    if (a.empty()) throw Error(ErrorCode::shape, std::string(what) + ": empty matrix");
    if (!a.all_finite()) throw Error(ErrorCode::invalid_input, std::string(what) + ": non-finite entry");
}

// Power-of-two factor bringing the largest entry into [0.5, 1); exact, so
// results stay bit-reproducible.
int scale_exponent(std::span<const double> values) {
    double biggest = 0.0;
    for (double v : values) biggest = std::max(biggest, std::abs(v));
    if (biggest == 0.0) return 0;
    int exponent = 0;
    std::frexp(biggest, &exponent);
    return exponent;
}

// Work block whose columns are the longer dimension of A.
ColumnBlock tall_columns(const Matrix& a, bool transposed) {
    return transposed ? ColumnBlock::rows_of(a) : ColumnBlock::columns_of(a);
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
    return order;
}

std::size_t signature_index(std::span<const double> v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[best])) best = i;
    return best;
}

// Normalizes the Jacobi output columns into an orthonormal set. Columns that
// are zero, or lose more than half their length when re-orthogonalized
// against the accepted ones, are replaced from the orthogonal complement.
// `total` >= count columns are returned; the extra ones complete the basis.
ColumnBlock orthonormal_left(const ColumnBlock& work, const std::vector<std::size_t>& order,
                             const std::vector<double>& norms, std::size_t total) {
    const auto& k = simd::kernels();
    const std::size_t len = work.length;
    ColumnBlock out(len, total);
    std::vector<std::size_t> accepted;
    std::vector<std::size_t> missing;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const std::size_t j = order[pos];
        double* u = out.col(pos);
        if (norms[j] == 0.0) {
            missing.push_back(pos);
            continue;
        }
        std::copy_n(work.col(j), len, u);
        k.scale(1.0 / norms[j], u, len);
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t a : accepted) k.axpy(-k.dot(out.col(a), u, len), out.col(a), u, len);
        const double residual = std::sqrt(k.sum_squares(u, len));
        if (residual < 0.5) {
            missing.push_back(pos);
            continue;
        }
        k.scale(1.0 / residual, u, len);
        accepted.push_back(pos);
    }
    for (std::size_t pos = order.size(); pos < total; ++pos) missing.push_back(pos);
    if (!missing.empty()) {
        ColumnBlock basis(len, accepted.size());
        for (std::size_t i = 0; i < accepted.size(); ++i) std::copy_n(out.col(accepted[i]), len, basis.col(i));
        const ColumnBlock fill = detail::orthonormal_complement(basis, missing.size());
        for (std::size_t i = 0; i < missing.size(); ++i) std::copy_n(fill.col(i), len, out.col(missing[i]));
    }
    return out;
}

}  // namespace

std::vector<double> singular_values(const Matrix& a) {
    require_finite(a, "singular_values");
    const bool transposed = a.rows() < a.cols();
    ColumnBlock work = tall_columns(a, transposed);
    const int exponent = scale_exponent(work.data);
    if (exponent != 0) simd::kernels().scale(std::ldexp(1.0, -exponent), work.data.data(), work.data.size());
    detail::one_sided_jacobi(work, nullptr);
    std::vector<double> sigma(work.count);
    for (std::size_t j = 0; j < work.count; ++j)
        sigma[j] = std::ldexp(std::sqrt(simd::kernels().sum_squares(work.col(j), work.length)), exponent);
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    return sigma;
}

SpectrumResult svd(const Matrix& a, std::optional<double> rank_tolerance, BasisMode mode) {
    require_finite(a, "svd");
    const double tol = rank_tolerance.value_or(default_rank_tolerance(a.rows(), a.cols()));
    if (!(tol >= 0.0) || !std::isfinite(tol)) throw Error(ErrorCode::invalid_input, "svd: rank tolerance must be >= 0");

    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const bool transposed = m < n;
    const std::size_t p = std::min(m, n);
    const std::size_t q = std::max(m, n);

    ColumnBlock work = tall_columns(a, transposed);
    const int exponent = scale_exponent(work.data);
    const auto& k = simd::kernels();
    if (exponent != 0) k.scale(std::ldexp(1.0, -exponent), work.data.data(), work.data.size());

    ColumnBlock rotations = ColumnBlock::identity(p);
    detail::one_sided_jacobi(work, &rotations);

    std::vector<double> norms(p);
    for (std::size_t j = 0; j < p; ++j) norms[j] = std::sqrt(k.sum_squares(work.col(j), q));
    const std::vector<std::size_t> order = descending_order(norms);

    // Tall side: q-long vectors from the rotated columns. Short side: the
    // accumulated rotations, permuted into the same order.
    const std::size_t tall_total = mode == BasisMode::full ? q : p;
    ColumnBlock tall = orthonormal_left(work, order, norms, tall_total);
    ColumnBlock shorter(p, p);
    for (std::size_t pos = 0; pos < p; ++pos) std::copy_n(rotations.col(order[pos]), p, shorter.col(pos));

    SpectrumResult out;
    out.singular_values.resize(p);
    for (std::size_t pos = 0; pos < p; ++pos) out.singular_values[pos] = std::ldexp(norms[order[pos]], exponent);
    out.rank_tolerance = tol;
    out.numerical_rank = numerical_rank(out.singular_values, tol);

    ColumnBlock& left = transposed ? shorter : tall;
    ColumnBlock& right = transposed ? tall : shorter;
    for (std::size_t i = 0; i < left.count; ++i) {
        const std::size_t at = signature_index(left.column(i));
        if (left.col(i)[at] < 0.0) {
            k.scale(-1.0, left.col(i), left.length);
            if (i < p) k.scale(-1.0, right.col(i), right.length);
        }
    }
    for (std::size_t i = p; i < right.count; ++i) {
        const std::size_t at = signature_index(right.column(i));
        if (right.col(i)[at] < 0.0) k.scale(-1.0, right.col(i), right.length);
    }
    out.left_basis = left.to_matrix();
    out.right_basis = right.to_matrix();
    return out;
}

namespace {

Matrix rank_one_terms(const SpectrumResult& spec, std::size_t first, std::size_t last) {
    const auto& k = simd::kernels();
    Matrix out(spec.left_basis.rows(), spec.right_basis.rows());
    for (std::size_t i = first; i <= last; ++i) {
        const std::vector<double> v = spec.right_basis.column(i - 1);
        const double sigma = spec.singular_values[i - 1];
        for (std::size_t r = 0; r < out.rows(); ++r) {
            const double coeff = sigma * spec.left_basis(r, i - 1);
            if (coeff != 0.0) k.axpy(coeff, v.data(), out.row(r).data(), v.size());
        }
    }
    return out;
}

}  // namespace

Matrix truncated_sum(const SpectrumResult& spec, std::size_t first, std::size_t last) {
    if (first < 1 || first > last || last > spec.numerical_rank) {
        throw Error(ErrorCode::range, "truncated_sum: need 1 <= first <= last <= rank (" +
                                          std::to_string(spec.numerical_rank) + "), got [" + std::to_string(first) +
                                          ", " + std::to_string(last) + "]");
    }
    return rank_one_terms(spec, first, last);
}

Matrix band_sum(const SpectrumResult& spec, std::size_t first, std::size_t last) {
    first = std::max<std::size_t>(first, 1);
    last = std::min(last, spec.numerical_rank);
    if (first > last) return Matrix(spec.left_basis.rows(), spec.right_basis.rows());
    return rank_one_terms(spec, first, last);
}

}  // namespace subspace::linalg
