#include "householder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subspace/simd/kernels.hpp"

namespace subspace::linalg::detail {

ColumnBlock ColumnBlock::identity(std::size_t n) {
    ColumnBlock b(n, n);
    for (std::size_t j = 0; j < n; ++j) b.col(j)[j] = 1.0;
    return b;
}

ColumnBlock ColumnBlock::columns_of(const Matrix& m) {
    ColumnBlock b(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) b.col(c)[r] = m(r, c);
    return b;
}

ColumnBlock ColumnBlock::rows_of(const Matrix& m) {
    ColumnBlock b(m.cols(), m.rows());
    std::copy(m.data().begin(), m.data().end(), b.data.begin());
    return b;
}

Matrix ColumnBlock::to_matrix() const {
    Matrix m(length, count);
    for (std::size_t c = 0; c < count; ++c)
        for (std::size_t r = 0; r < length; ++r) m(r, c) = col(c)[r];
    return m;
}

namespace {

struct Reflector {
    std::size_t start = 0;
    std::vector<double> v;  // acts on entries [start, length)
    double tau = 0.0;       // H = I - tau v v^T
};

// Reflector mapping x (the tail of a column from `start`) onto alpha * e_start.
Reflector make_reflector(const double* x, std::size_t length, std::size_t start, double& alpha) {
    const auto& k = simd::kernels();
    Reflector h;
    h.start = start;
    h.v.assign(x + start, x + length);
    const double norm = std::sqrt(k.sum_squares(h.v.data(), h.v.size()));
    if (norm == 0.0) {
        alpha = 0.0;
        return h;
    }
    alpha = h.v[0] > 0.0 ? -norm : norm;
    h.v[0] -= alpha;
    const double vnorm2 = k.sum_squares(h.v.data(), h.v.size());
    h.tau = vnorm2 > 0.0 ? 2.0 / vnorm2 : 0.0;
    return h;
}

void apply_reflector(const Reflector& h, double* y) {
    if (h.tau == 0.0) return;
    const auto& k = simd::kernels();
    const double proj = k.dot(h.v.data(), y + h.start, h.v.size());
    k.axpy(-h.tau * proj, h.v.data(), y + h.start, h.v.size());
}

std::vector<Reflector> factor(ColumnBlock& a, std::vector<double>* diagonal) {
    std::vector<Reflector> reflectors;
    reflectors.reserve(a.count);
    for (std::size_t j = 0; j < a.count && j < a.length; ++j) {
        double alpha = 0.0;
        Reflector h = make_reflector(a.col(j), a.length, j, alpha);
        for (std::size_t c = j + 1; c < a.count; ++c) apply_reflector(h, a.col(c));
        if (diagonal) (*diagonal)[j] = alpha;
        reflectors.push_back(std::move(h));
    }
    return reflectors;
}

}  // namespace

ThinQr householder_qr(ColumnBlock a) {
    const std::size_t n = a.count;
    std::vector<double> diag(n, 0.0);
    const std::vector<Reflector> reflectors = factor(a, &diag);

    ThinQr out;
    out.r = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < c; ++r) out.r(r, c) = a.col(c)[r];
        out.r(c, c) = diag[c];
    }
    out.q = ColumnBlock(a.length, n);
    for (std::size_t c = 0; c < n; ++c) {
        double* q = out.q.col(c);
        q[c] = 1.0;
        for (std::size_t h = reflectors.size(); h-- > 0;) apply_reflector(reflectors[h], q);
    }
    return out;
}

ColumnBlock orthonormal_complement(const ColumnBlock& basis, std::size_t extra) {
    ColumnBlock work = basis;
    const std::vector<Reflector> reflectors = factor(work, nullptr);
    const std::size_t k = basis.count;
    ColumnBlock out(basis.length, extra);
    for (std::size_t e = 0; e < extra; ++e) {
        double* q = out.col(e);
        q[k + e] = 1.0;
        for (std::size_t h = reflectors.size(); h-- > 0;) apply_reflector(reflectors[h], q);
    }
    return out;
}

std::size_t one_sided_jacobi(ColumnBlock& work, ColumnBlock* accumulate) {
    constexpr std::size_t max_sweeps = 100;
    const auto& k = simd::kernels();
    const std::size_t len = work.length;
    const std::size_t n = work.count;
    const double tol = static_cast<double>(std::max<std::size_t>(len, 8)) * std::numeric_limits<double>::epsilon();

    std::size_t sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double* ci = work.col(i);
                double* cj = work.col(j);
                const double a = k.sum_squares(ci, len);
                const double b = k.sum_squares(cj, len);
                if (a == 0.0 || b == 0.0) continue;
                const double g = k.dot(ci, cj, len);
                if (std::abs(g) <= tol * std::sqrt(a) * std::sqrt(b)) continue;
                rotated = true;
                const double zeta = (b - a) / (2.0 * g);
                const double t = std::abs(zeta) > 1e150
                                     ? 0.5 / zeta
                                     : std::copysign(1.0 / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta)), zeta);
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                k.rotate(ci, cj, len, c, s);
                if (accumulate) k.rotate(accumulate->col(i), accumulate->col(j), accumulate->length, c, s);
            }
        }
        if (!rotated) break;
    }
    return sweep;
}

}  // namespace subspace::linalg::detail
