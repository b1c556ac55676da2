#include <cmath>
#include <string>

#include "subspace/error.hpp"
#include "subspace/linalg.hpp"
#include "subspace/simd/kernels.hpp"

namespace subspace::linalg {

double frobenius_energy(const Matrix& a) {
    if (!a.all_finite()) throw Error(ErrorCode::invalid_input, "frobenius_energy: non-finite entry");
    return simd::sum_squares(a.data());
}

double oriented_energy(const Matrix& a, std::span<const double> q) {
    if (!a.all_finite()) throw Error(ErrorCode::invalid_input, "oriented_energy: non-finite entry");
    if (q.size() != a.rows()) {
        throw Error(ErrorCode::shape, "oriented_energy: direction has length " + std::to_string(q.size()) +
                                          ", matrix has " + std::to_string(a.rows()) + " rows");
    }
    const double norm = std::sqrt(simd::sum_squares(q));
    if (!(std::abs(norm - 1.0) <= 1e-8)) {
        throw Error(ErrorCode::normalization, "oriented_energy: direction is not unit length");
    }
    // q^T A accumulated row by row.
    std::vector<double> projected(a.cols(), 0.0);
    const auto& k = simd::kernels();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (q[r] != 0.0) k.axpy(q[r], a.row(r).data(), projected.data(), projected.size());
    }
    return k.sum_squares(projected.data(), projected.size());
}

}  // namespace subspace::linalg
