#include "acas/simd/kernels.hpp"

namespace acas::simd {

namespace {

void mix_scalar(const cf32* x, const cf32* phasor, cf32* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    float a = x[i].real(), b = x[i].imag();
    float c = phasor[i].real(), d = phasor[i].imag();
    out[i] = cf32(a * c - b * d, a * d + b * c);
  }
}

std::complex<double> dot_real_scalar(const cf32* x, const float* r, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += static_cast<double>(x[i].real()) * r[i];
    im += static_cast<double>(x[i].imag()) * r[i];
  }
  return {re, im};
}

void accumulate_scalar(cf32* out, const float* chips, const cf32* phasor, float amplitude,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    float s = amplitude * chips[i];
    out[i] = cf32(out[i].real() + s * phasor[i].real(), out[i].imag() + s * phasor[i].imag());
  }
}

double energy_scalar(const cf32* x, std::size_t n) {
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double re = x[i].real(), im = x[i].imag();
    e += re * re + im * im;
  }
  return e;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{Isa::Scalar, mix_scalar, dot_real_scalar, accumulate_scalar,
                                 energy_scalar};
  return table;
}

}  // namespace acas::simd
