#include "acas/receiver.hpp"

#include <algorithm>
#include <cmath>

#include "acas/error.hpp"

namespace acas {

namespace c = constants;

void validate(const E1Estimates& est) {
  for (double v : {est.tau_e1, est.doppler_e1, est.dt_sat_e1, est.dt_rx_e1, est.tau_prop_hat,
                   est.i_e1_hat, est.epoch}) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Structural, "non-finite E1 estimate");
  }
  if (est.tau_prop_hat < 0.06 || est.tau_prop_hat > 0.11) {
    throw Error(ErrorKind::Structural, "tau_prop_hat outside [0.06, 0.11] s");
  }
}

double iono_coefficient(const BiasConfig& bias) {
  double r = bias.f1 / bias.f6;
  return std::abs(r * r - 1.0);
}

TimeWindow snapshot_window_single(std::int64_t gst_j, double recs_offset_s, const E1Estimates& est,
                                  const BiasConfig& bias, unsigned dtau_max, std::uint32_t n_chips) {
  double lead = recs_offset_s + est.tau_prop_hat - est.dt_sat_e1 + est.dt_rx_e1 +
                delta_e1e6(bias, est.i_e1_hat);
  GstTime start = GstTime::from_seconds(gst_j) + lead;
  double span = dtau_max * c::kOffsetUnitSeconds + n_chips / c::kChipRate;
  return {start, start + span};
}

TimeWindow snapshot_window_all(std::int64_t gst_j, double recs_offset_s,
                               std::span<const E1Estimates> ests, std::span<const BiasConfig> bias,
                               unsigned dtau_max, std::uint32_t n_chips) {
  if (ests.empty()) throw Error(ErrorKind::Structural, "snapshot window needs at least one satellite");
  if (bias.size() != ests.size()) throw Error(ErrorKind::Structural, "one bias entry per satellite");
  TimeWindow all = snapshot_window_single(gst_j, recs_offset_s, ests[0], bias[0], dtau_max, n_chips);
  for (std::size_t i = 1; i < ests.size(); ++i) {
    auto w = snapshot_window_single(gst_j, recs_offset_s, ests[i], bias[i], dtau_max, n_chips);
    all.start = std::min(all.start, w.start);
    all.end = std::max(all.end, w.end);
  }
  return all;
}

TimeWindow narrowed_window(const GstTime& single_start, RandomOffset offset, std::uint32_t n_chips) {
  // Same summation order as the broad window so containment holds exactly.
  return {single_start + offset.seconds(), single_start + (offset.seconds() + n_chips / c::kChipRate)};
}

TimeWindow padded(const TimeWindow& window, double margin) {
  return {window.start - margin, window.end + margin};
}

double iono_excess(double i_e1_hat_m, const BiasConfig& bias) {
  return i_e1_hat_m * iono_coefficient(bias);
}

double delta_e1e6(const BiasConfig& bias, double i_e1_hat_m) {
  return bias.bgd_hat + iono_excess(i_e1_hat_m, bias) / c::kSpeedOfLight + bias.hwb_hat;
}

double doppler_e6(double doppler_e1, const BiasConfig& bias) { return doppler_e1 * bias.f6 / bias.f1; }

double predicted_code_phase(double tau_e1, double delta) { return tau_e1 + delta; }

double extrapolate_tau_e1(const E1Estimates& est, double target, const BiasConfig& bias) {
  double range_rate = -est.doppler_e1 / bias.f1;  // s/s
  return est.tau_e1 + range_rate * (target - est.epoch);
}

}  // namespace acas
