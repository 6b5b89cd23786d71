#pragma once

// Receiver-side snapshot windowing and the E1 -> E6 bias chain. The ECS
// correlator lives in correlator.hpp.

#include <cstdint>
#include <span>

#include "acas/constants.hpp"
#include "acas/crypto_core.hpp"
#include "acas/gst_time.hpp"

namespace acas {

struct E1Estimates {
  int svid = 1;
  double tau_e1 = 0.08;        // E1 code phase (pseudorange in time), s
  double doppler_e1 = 0.0;     // Hz
  double dt_sat_e1 = 0.0;      // s
  double dt_rx_e1 = 0.0;       // s
  double tau_prop_hat = 0.08;  // s, includes the E1 ionospheric delay
  double i_e1_hat = 0.0;       // corrected E1 ionospheric delay, m
  double epoch = 0.0;          // measurement time of tau_e1 relative to GST_j, s
};

// Throws Error{Structural} for non-finite fields or tau_prop_hat outside
// [0.06, 0.11] s.
void validate(const E1Estimates& est);

struct BiasConfig {
  double bgd_hat = 0.0;  // s
  double hwb_hat = 0.0;  // s
  double f1 = constants::kF1;
  double f6 = constants::kF6;
};

// |f1^2/f6^2 - 1|
double iono_coefficient(const BiasConfig& bias);

// Eq. 8-9 window for one satellite, anchored at integer GST second gst_j.
TimeWindow snapshot_window_single(std::int64_t gst_j, double recs_offset_s, const E1Estimates& est,
                                  const BiasConfig& bias, unsigned dtau_max, std::uint32_t n_chips);

// Union window over all satellites; bias[i] belongs to ests[i]. Throws
// Error{Structural} for an empty list or mismatched lengths.
TimeWindow snapshot_window_all(std::int64_t gst_j, double recs_offset_s,
                               std::span<const E1Estimates> ests, std::span<const BiasConfig> bias,
                               unsigned dtau_max, std::uint32_t n_chips);

// Acquisition window once the random offset of the slot is known.
TimeWindow narrowed_window(const GstTime& single_start, RandomOffset offset, std::uint32_t n_chips);

// Widens both ends of a window by margin seconds.
TimeWindow padded(const TimeWindow& window, double margin);

double iono_excess(double i_e1_hat_m, const BiasConfig& bias);
double delta_e1e6(const BiasConfig& bias, double i_e1_hat_m);
double doppler_e6(double doppler_e1, const BiasConfig& bias = {});
double predicted_code_phase(double tau_e1, double delta);

// tau_e1 moved from its measurement epoch to `target` (both relative to
// GST_j) with the range rate implied by the E1 Doppler.
double extrapolate_tau_e1(const E1Estimates& est, double target, const BiasConfig& bias = {});

}  // namespace acas
