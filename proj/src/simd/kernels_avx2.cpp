// Compiled with -mavx2 -mfma; only reached through the runtime dispatch.
#include <immintrin.h>

#include "acas/simd/kernels.hpp"

namespace acas::simd {

namespace {

void mix_avx2(const cf32* x, const cf32* phasor, cf32* out, std::size_t n) {
  const auto* xs = reinterpret_cast<const float*>(x);
  const auto* ps = reinterpret_cast<const float*>(phasor);
  auto* os = reinterpret_cast<float*>(out);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256 a = _mm256_loadu_ps(xs + 2 * i);
    __m256 b = _mm256_loadu_ps(ps + 2 * i);
    __m256 b_re = _mm256_moveldup_ps(b);
    __m256 b_im = _mm256_movehdup_ps(b);
    __m256 a_swap = _mm256_permute_ps(a, 0xB1);
    __m256 r = _mm256_fmaddsub_ps(a, b_re, _mm256_mul_ps(a_swap, b_im));
    _mm256_storeu_ps(os + 2 * i, r);
  }
  for (; i < n; ++i) {
    float a = x[i].real(), b = x[i].imag();
    float c = phasor[i].real(), d = phasor[i].imag();
    out[i] = cf32(a * c - b * d, a * d + b * c);
  }
}

std::complex<double> dot_real_avx2(const cf32* x, const float* r, std::size_t n) {
  const auto* xs = reinterpret_cast<const float*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256 xv = _mm256_loadu_ps(xs + 2 * i);
    __m128 rv = _mm_loadu_ps(r + i);
    __m256d x_lo = _mm256_cvtps_pd(_mm256_castps256_ps128(xv));
    __m256d x_hi = _mm256_cvtps_pd(_mm256_extractf128_ps(xv, 1));
    __m256d r_lo = _mm256_cvtps_pd(_mm_unpacklo_ps(rv, rv));
    __m256d r_hi = _mm256_cvtps_pd(_mm_unpackhi_ps(rv, rv));
    acc0 = _mm256_fmadd_pd(x_lo, r_lo, acc0);
    acc1 = _mm256_fmadd_pd(x_hi, r_hi, acc1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    re += static_cast<double>(x[i].real()) * r[i];
    im += static_cast<double>(x[i].imag()) * r[i];
  }
  return {re, im};
}

void accumulate_avx2(cf32* out, const float* chips, const cf32* phasor, float amplitude,
                     std::size_t n) {
  auto* os = reinterpret_cast<float*>(out);
  const auto* ps = reinterpret_cast<const float*>(phasor);
  const __m128 amp = _mm_set1_ps(amplitude);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m128 s = _mm_mul_ps(amp, _mm_loadu_ps(chips + i));
    __m256 s_dup = _mm256_set_m128(_mm_unpackhi_ps(s, s), _mm_unpacklo_ps(s, s));
    __m256 p = _mm256_loadu_ps(ps + 2 * i);
    __m256 o = _mm256_loadu_ps(os + 2 * i);
    _mm256_storeu_ps(os + 2 * i, _mm256_fmadd_ps(s_dup, p, o));
  }
  for (; i < n; ++i) {
    float s = amplitude * chips[i];
    out[i] = cf32(out[i].real() + s * phasor[i].real(), out[i].imag() + s * phasor[i].imag());
  }
}

double energy_avx2(const cf32* x, std::size_t n) {
  const auto* xs = reinterpret_cast<const float*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256 xv = _mm256_loadu_ps(xs + 2 * i);
    __m256d lo = _mm256_cvtps_pd(_mm256_castps256_ps128(xv));
    __m256d hi = _mm256_cvtps_pd(_mm256_extractf128_ps(xv, 1));
    acc0 = _mm256_fmadd_pd(lo, lo, acc0);
    acc1 = _mm256_fmadd_pd(hi, hi, acc1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double e = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    double re = x[i].real(), im = x[i].imag();
    e += re * re + im * im;
  }
  return e;
}

}  // namespace

const KernelTable& avx2_kernel_table() noexcept {
  static const KernelTable table{Isa::Avx2, mix_avx2, dot_real_avx2, accumulate_avx2, energy_avx2};
  return table;
}

}  // namespace acas::simd
