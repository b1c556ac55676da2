#include "kernels_impl.hpp"

namespace subspace::simd::detail {
namespace {

// Four independent accumulators, combined pairwise at the end. Same
// association order as the 4-lane vector variants.
double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += x[i] * y[i];
        acc[1] += x[i + 1] * y[i + 1];
        acc[2] += x[i + 2] * y[i + 2];
        acc[3] += x[i + 3] * y[i + 3];
    }
    double sum = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) sum += x[i] * y[i];
    return sum;
}

double sum_squares_scalar(const double* x, std::size_t n) { return dot_scalar(x, x, n); }

void rotate_scalar(double* x, double* y, std::size_t n, double c, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
    static const KernelTable table{Backend::scalar, dot_scalar, sum_squares_scalar,
                                   rotate_scalar, axpy_scalar, scale_scalar};
    return table;
}

}  // namespace subspace::simd::detail
