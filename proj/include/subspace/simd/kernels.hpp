#pragma once
// Vector kernels behind every decomposition in the library.
//
// Each kernel has a scalar reference implementation and, where the target
// supports it, a vectorized variant (AVX2+FMA on x86-64, NEON on aarch64).
// The variant is picked once at startup from the CPU feature bits; the
// SUBSPACE_SIMD environment variable (scalar|avx2|neon) or set_backend()
// overrides it.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace subspace::simd {

enum class Backend { scalar, avx2, neon };

struct KernelTable {
    Backend backend;
    // sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum_i x[i]^2
    double (*sum_squares)(const double* x, std::size_t n);
    // (x, y) <- (c*x - s*y, s*x + c*y)
    void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
    // y <- y + a*x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // x <- a*x
    void (*scale)(double a, double* x, std::size_t n);
};

/// Kernel table currently in use.
const KernelTable& kernels() noexcept;

/// Kernel table of a specific backend. Throws std::invalid_argument if the
/// backend is not compiled in or the CPU lacks the instructions.
const KernelTable& kernels_for(Backend backend);

bool backend_available(Backend backend) noexcept;
std::vector<Backend> available_backends();

Backend active_backend() noexcept;
void set_backend(Backend backend);

std::string_view backend_name(Backend backend) noexcept;
Backend parse_backend(std::string_view name);

/// Restores the previous backend on destruction. Test helper.
class ScopedBackend {
public:
    explicit ScopedBackend(Backend backend) : previous_(active_backend()) { set_backend(backend); }
    ~ScopedBackend() { set_backend(previous_); }
    ScopedBackend(const ScopedBackend&) = delete;
    ScopedBackend& operator=(const ScopedBackend&) = delete;

private:
    Backend previous_;
};

// Convenience wrappers over the active table.
inline double dot(std::span<const double> x, std::span<const double> y) noexcept {
    return kernels().dot(x.data(), y.data(), x.size());
}
inline double sum_squares(std::span<const double> x) noexcept {
    return kernels().sum_squares(x.data(), x.size());
}

}  // namespace subspace::simd
