#pragma once

#include "subspace/simd/kernels.hpp"

namespace subspace::simd::detail {

const KernelTable& scalar_table() noexcept;
#if defined(SUBSPACE_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(SUBSPACE_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif

}  // namespace subspace::simd::detail
