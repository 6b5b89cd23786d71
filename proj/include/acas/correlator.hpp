#pragma once

// ECS snapshot correlation: carrier wipe-off over a small Doppler grid,
// lag search around the predicted arrival, parabolic peak refinement.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "acas/bit_sequence.hpp"
#include "acas/constants.hpp"
#include "acas/gst_time.hpp"
#include "acas/signal_sim.hpp"

namespace acas {

struct SearchWindow {
  double t_max = 1.5 / constants::kChipRate;  // s
  double f_max = 0.0;                         // Hz
};

enum class CorrelationMethod { Auto, Direct, Fft };

struct CorrelatorConfig {
  double threshold_db = 13.0;
  CorrelationMethod method = CorrelationMethod::Auto;
  // Frequency bins on each side of the search grid, at offsets
  // (F_max + m / T_coh) for m = 3 .. 2 + noise_bins, used as the noise floor.
  int noise_bins = 4;
  std::size_t direct_max_lags = 64;  // Auto switches to FFT above this
};

struct EcsMeasurement {
  double tau_e6 = 0.0;      // s, arrival minus ECS transmit start
  GstTime arrival;          // receiver time of the first ECS chip
  double doppler_e6 = 0.0;  // Hz
  double peak_metric = 0.0; // linear power ratio
  bool detected = false;
};

double threshold_linear(const CorrelatorConfig& config);

// out[l] = sum_i x[l + i] * r[i] for l in [0, n_lags). Requires
// x.size() >= r.size() + n_lags - 1 (Error{Range}).
std::vector<std::complex<double>> correlate_lags_direct(std::span<const std::complex<float>> x,
                                                        std::span<const float> r, std::size_t n_lags);
std::vector<std::complex<double>> correlate_lags_fft(std::span<const std::complex<float>> x,
                                                     std::span<const float> r, std::size_t n_lags);

// Correlates the decrypted ECS against the snapshot. transmit_start is the
// GST of the first ECS chip; tau_hat_e6 its predicted code phase.
// Throws Error{Range} if the snapshot misses part of the search span.
EcsMeasurement correlate_ecs(const Snapshot& snapshot, std::span<const Chip> ecs,
                             const GstTime& transmit_start, double tau_hat_e6, double doppler_hat_e6,
                             const SearchWindow& window, const CorrelatorConfig& config = {});

}  // namespace acas
