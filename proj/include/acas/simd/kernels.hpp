#pragma once

// Data-parallel inner loops of the snapshot synthesizer and the ECS
// correlator. Every kernel has a scalar reference and, on x86-64, an
// AVX2/FMA variant; the table in use is chosen once at runtime.

#include <complex>
#include <cstddef>

namespace acas::simd {

using cf32 = std::complex<float>;

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;

  // out[i] = x[i] * phasor[i]
  void (*mix)(const cf32* x, const cf32* phasor, cf32* out, std::size_t n);

  // sum_i x[i] * r[i], accumulated in double precision.
  std::complex<double> (*dot_real)(const cf32* x, const float* r, std::size_t n);

  // out[i] += amplitude * chips[i] * phasor[i]
  void (*accumulate)(cf32* out, const float* chips, const cf32* phasor, float amplitude,
                     std::size_t n);

  // sum_i |x[i]|^2 in double precision.
  double (*energy)(const cf32* x, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

// nullptr when the AVX2 table was not built or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

// Selected table: AVX2 when available unless the ACAS_SIMD environment
// variable is set to "scalar".
const KernelTable& active_kernels() noexcept;

}  // namespace acas::simd
