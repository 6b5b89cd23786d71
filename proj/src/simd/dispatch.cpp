#include <cstdlib>
#include <cstring>

#include "acas/simd/kernels.hpp"

namespace acas::simd {

#if defined(ACAS_HAVE_AVX2)
const KernelTable& avx2_kernel_table() noexcept;
#endif

const char* to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() noexcept {
#if defined(ACAS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* forced = std::getenv("ACAS_SIMD");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return scalar_kernels();
    const KernelTable* avx2 = avx2_kernels();
    return avx2 != nullptr ? *avx2 : scalar_kernels();
  }();
  return table;
}

}  // namespace acas::simd
