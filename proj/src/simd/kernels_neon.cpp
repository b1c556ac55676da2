// AArch64 Advanced SIMD variants. NEON is part of the base ISA there, so no
// runtime probe is needed.
#include "kernels_impl.hpp"

#include <arm_neon.h>

namespace subspace::simd::detail {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) sum += x[i] * y[i];
    return sum;
}

double sum_squares_neon(const double* x, std::size_t n) { return dot_neon(x, x, n); }

void rotate_neon(double* x, double* y, std::size_t n, double c, double s) {
    const float64x2_t vc = vdupq_n_f64(c);
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t xi = vld1q_f64(x + i);
        const float64x2_t yi = vld1q_f64(y + i);
        vst1q_f64(x + i, vfmsq_f64(vmulq_f64(vc, xi), vs, yi));
        vst1q_f64(y + i, vfmaq_f64(vmulq_f64(vc, yi), vs, xi));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_neon(double a, double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

}  // namespace

const KernelTable& neon_table() noexcept {
    static const KernelTable table{Backend::neon, dot_neon, sum_squares_neon,
                                   rotate_neon, axpy_neon, scale_neon};
    return table;
}

}  // namespace subspace::simd::detail
