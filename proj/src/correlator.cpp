#include "acas/correlator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "acas/constants.hpp"
#include "acas/error.hpp"
#include "acas/simd/kernels.hpp"

namespace acas {

namespace c = constants;
using cf32 = std::complex<float>;

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t fft_size(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void check_lag_span(std::size_t x, std::size_t r, std::size_t n_lags) {
  if (n_lags == 0 || r == 0 || x < r + n_lags - 1) {
    throw Error(ErrorKind::Range, "correlation input shorter than replica plus lags");
  }
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

}  // namespace

double threshold_linear(const CorrelatorConfig& config) { return std::pow(10.0, config.threshold_db / 10.0); }

std::vector<std::complex<double>> correlate_lags_direct(std::span<const cf32> x, std::span<const float> r,
                                                        std::size_t n_lags) {
  check_lag_span(x.size(), r.size(), n_lags);
  const auto& k = simd::active_kernels();
  std::vector<std::complex<double>> out(n_lags);
  for (std::size_t l = 0; l < n_lags; ++l) out[l] = k.dot_real(x.data() + l, r.data(), r.size());
  return out;
}

std::vector<std::complex<double>> correlate_lags_fft(std::span<const cf32> x, std::span<const float> r,
                                                     std::size_t n_lags) {
  check_lag_span(x.size(), r.size(), n_lags);
  const std::size_t span = r.size() + n_lags - 1;
  const std::size_t n = fft_size(span);
  FftwBuffer xa(n), ra(n);
  fftw_plan fwd_x, fwd_r, inv;
  {
    std::lock_guard lock(fftw_planner_mutex());
    fwd_x = fftw_plan_dft_1d(static_cast<int>(n), xa.data, xa.data, FFTW_FORWARD, FFTW_ESTIMATE);
    fwd_r = fftw_plan_dft_1d(static_cast<int>(n), ra.data, ra.data, FFTW_FORWARD, FFTW_ESTIMATE);
    inv = fftw_plan_dft_1d(static_cast<int>(n), xa.data, xa.data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) {
    xa.data[i][0] = i < span ? x[i].real() : 0.0;
    xa.data[i][1] = i < span ? x[i].imag() : 0.0;
    ra.data[i][0] = i < r.size() ? r[i] : 0.0;
    ra.data[i][1] = 0.0;
  }
  fftw_execute(fwd_x);
  fftw_execute(fwd_r);
  // Cross-correlation: X * conj(R).
  for (std::size_t i = 0; i < n; ++i) {
    double a = xa.data[i][0], b = xa.data[i][1];
    double cr = ra.data[i][0], ci = -ra.data[i][1];
    xa.data[i][0] = a * cr - b * ci;
    xa.data[i][1] = a * ci + b * cr;
  }
  fftw_execute(inv);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(fwd_x);
    fftw_destroy_plan(fwd_r);
    fftw_destroy_plan(inv);
  }
  std::vector<std::complex<double>> out(n_lags);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t l = 0; l < n_lags; ++l) out[l] = {xa.data[l][0] * scale, xa.data[l][1] * scale};
  return out;
}

EcsMeasurement correlate_ecs(const Snapshot& snapshot, std::span<const Chip> ecs,
                             const GstTime& transmit_start, double tau_hat_e6, double doppler_hat_e6,
                             const SearchWindow& window, const CorrelatorConfig& config) {
  if (!(window.t_max > 0.0) || !(window.f_max >= 0.0)) {
    throw Error(ErrorKind::Structural, "search window needs t_max > 0 and f_max >= 0");
  }
  if (ecs.empty()) throw Error(ErrorKind::Structural, "empty ECS replica");
  const double fs = snapshot.sample_rate();
  const double t_coh = static_cast<double>(ecs.size()) / c::kChipRate;

  // Replica on the sample grid, offset by the fractional part of the
  // predicted arrival so that lag 0 is the prediction itself.
  const GstTime predicted = transmit_start + tau_hat_e6;
  const double u = (predicted - snapshot.start()) * fs;
  const double m0f = std::floor(u);
  const double frac = u - m0f;
  const double rate = -doppler_hat_e6 / c::kF6;
  const double step = c::kChipRate / (fs * (1.0 + rate));
  const auto replica_len = static_cast<std::size_t>(std::ceil(static_cast<double>(ecs.size()) / step)) + 1;
  std::vector<float> replica(replica_len);
  render_chips(ecs, -frac * step, step, replica);

  const auto max_lag = static_cast<std::int64_t>(std::ceil(window.t_max * fs));
  const std::size_t n_lags = static_cast<std::size_t>(2 * max_lag + 1);
  const auto seg_start = static_cast<std::int64_t>(m0f) - max_lag;
  const std::size_t seg_len = replica_len + n_lags - 1;
  if (seg_start < 0 || seg_start + static_cast<std::int64_t>(seg_len) > static_cast<std::int64_t>(snapshot.size())) {
    throw Error(ErrorKind::Range, "snapshot does not cover the ECS search span");
  }
  auto segment = snapshot.samples().subspan(static_cast<std::size_t>(seg_start), seg_len);

  // Search bins then noise-reference bins.
  const double bin_step = 1.0 / (2.0 * t_coh);
  const int half_bins = static_cast<int>(std::ceil(window.f_max / bin_step));
  std::vector<double> freqs;
  for (int b = -half_bins; b <= half_bins; ++b) freqs.push_back(doppler_hat_e6 + b * bin_step);
  const std::size_t n_search = freqs.size();
  for (int m = 3; m < 3 + config.noise_bins; ++m) {
    freqs.push_back(doppler_hat_e6 - window.f_max - m / t_coh);
    freqs.push_back(doppler_hat_e6 + window.f_max + m / t_coh);
  }

  const bool use_fft = config.method == CorrelationMethod::Fft ||
                       (config.method == CorrelationMethod::Auto && n_lags > config.direct_max_lags);
  const auto& k = simd::active_kernels();
  std::vector<cf32> phasor(seg_len), mixed(seg_len);
  std::vector<std::vector<double>> power(freqs.size(), std::vector<double>(n_lags));
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    fill_phasor(phasor, 0.0, -2.0 * std::numbers::pi * freqs[f] / fs);
    k.mix(segment.data(), phasor.data(), mixed.data(), seg_len);
    auto corr = use_fft ? correlate_lags_fft(mixed, replica, n_lags)
                        : correlate_lags_direct(mixed, replica, n_lags);
    for (std::size_t l = 0; l < n_lags; ++l) power[f][l] = std::norm(corr[l]);
  }

  std::size_t best_f = 0, best_l = 0;
  for (std::size_t f = 0; f < n_search; ++f) {
    for (std::size_t l = 0; l < n_lags; ++l) {
      if (power[f][l] > power[best_f][best_l]) {
        best_f = f;
        best_l = l;
      }
    }
  }

  const double samples_per_chip = fs / c::kChipRate;
  std::vector<double> off_peak;
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    for (std::size_t l = 0; l < n_lags; ++l) {
      double dist = std::abs(static_cast<double>(l) - static_cast<double>(best_l));
      if (f >= n_search || dist > samples_per_chip) off_peak.push_back(power[f][l]);
    }
  }

  EcsMeasurement out;
  const double peak = power[best_f][best_l];
  if (!off_peak.empty()) {
    auto mid = off_peak.begin() + static_cast<std::ptrdiff_t>(off_peak.size() / 2);
    std::nth_element(off_peak.begin(), mid, off_peak.end());
    out.peak_metric = *mid > 0.0 ? peak / *mid : (peak > 0.0 ? INFINITY : 0.0);
  }

  double delta = 0.0;
  if (best_l > 0 && best_l + 1 < n_lags) {
    double pm = power[best_f][best_l - 1], p0 = peak, pp = power[best_f][best_l + 1];
    double den = pm - 2.0 * p0 + pp;
    if (den < 0.0) delta = std::clamp(0.5 * (pm - pp) / den, -0.5, 0.5);
  }
  const double lag = static_cast<double>(best_l) - static_cast<double>(max_lag) + delta;
  out.arrival = snapshot.start() + (u + lag) / fs;
  out.tau_e6 = out.arrival - transmit_start;
  out.doppler_e6 = freqs[best_f];
  out.detected = out.peak_metric >= threshold_linear(config);
  return out;
}

}  // namespace acas
