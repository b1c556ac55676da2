#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace subspace::simd {
namespace {

bool cpu_supports(Backend backend) noexcept {
    switch (backend) {
    case Backend::scalar:
        return true;
    case Backend::avx2:
#if defined(SUBSPACE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    case Backend::neon:
#if defined(SUBSPACE_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

const KernelTable* table_pointer(Backend backend) noexcept {
    if (!cpu_supports(backend)) return nullptr;
    switch (backend) {
    case Backend::scalar:
        return &detail::scalar_table();
    case Backend::avx2:
#if defined(SUBSPACE_HAVE_AVX2)
        return &detail::avx2_table();
#else
        return nullptr;
#endif
    case Backend::neon:
#if defined(SUBSPACE_HAVE_NEON)
        return &detail::neon_table();
#else
        return nullptr;
#endif
    }
    return nullptr;
}

const KernelTable* initial_table() {
    if (const char* env = std::getenv("SUBSPACE_SIMD")) {
        const KernelTable* forced = table_pointer(parse_backend(env));
        if (forced == nullptr) throw std::invalid_argument(std::string("SUBSPACE_SIMD backend unavailable: ") + env);
        return forced;
    }
    for (Backend b : {Backend::avx2, Backend::neon}) {
        if (const KernelTable* t = table_pointer(b)) return t;
    }
    return &detail::scalar_table();
}

std::atomic<const KernelTable*>& active() {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable& kernels() noexcept { return *active().load(std::memory_order_acquire); }

const KernelTable& kernels_for(Backend backend) {
    const KernelTable* t = table_pointer(backend);
    if (t == nullptr) {
        throw std::invalid_argument("SIMD backend not available: " + std::string(backend_name(backend)));
    }
    return *t;
}

bool backend_available(Backend backend) noexcept { return table_pointer(backend) != nullptr; }

std::vector<Backend> available_backends() {
    std::vector<Backend> out;
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
        if (backend_available(b)) out.push_back(b);
    }
    return out;
}

Backend active_backend() noexcept { return kernels().backend; }

void set_backend(Backend backend) { active().store(&kernels_for(backend), std::memory_order_release); }

std::string_view backend_name(Backend backend) noexcept {
    switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    }
    return "unknown";
}

Backend parse_backend(std::string_view name) {
    if (name == "scalar") return Backend::scalar;
    if (name == "avx2") return Backend::avx2;
    if (name == "neon") return Backend::neon;
    throw std::invalid_argument("unknown SIMD backend: " + std::string(name));
}

}  // namespace subspace::simd
