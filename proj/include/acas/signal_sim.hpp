#pragma once

// Complex baseband E6C snapshot synthesis and the .snap file codec.
//
// .snap layout, big-endian: "ACSN" | version u8 = 1 | f_s f64
//   | start_gst i64 (ns, receiver clock) | sample count u64
//   | interleaved f32 I, Q

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "acas/bit_sequence.hpp"
#include "acas/gst_time.hpp"
#include "acas/octets.hpp"
#include "acas/system_side.hpp"

namespace acas {

inline constexpr double kDefaultSampleRate = 20.46e6;  // 4 samples per chip
inline constexpr std::uint8_t kSnapshotFormatVersion = 1;

struct SatelliteTruth {
  int svid = 1;
  double tau_prop = 0.08;     // geometric propagation time at the reference epoch, s
  double dt_sat_e1 = 0.0;     // satellite clock offset on E1, s
  double bgd_true = 0.0;      // E1-E6 group delay, s
  double tec = 0.0;           // el/m^2
  double doppler_e1 = 0.0;    // Hz
  double cn0 = 45.0;          // dB-Hz
  double multipath_e6 = 0.0;  // extra E6 delay, s
  double carrier_phase = 0.0; // rad at the reference epoch
};

// Receiver-wide terms shared by every satellite.
struct ReceiverTruth {
  double hwb_rx = 0.0;    // E1-E6 hardware bias, s
  double dt_rx_e1 = 0.0;  // receiver clock bias on E1, s
};

enum class SpoofKind { None, WrongChips, StaticReplayShift, NoSignal };

struct SpoofMode {
  SpoofKind kind = SpoofKind::None;
  double shift = 0.0;  // s, StaticReplayShift only; must be non-zero

  static SpoofMode none() { return {}; }
  static SpoofMode wrong_chips() { return {SpoofKind::WrongChips, 0.0}; }
  static SpoofMode static_replay(double shift_s);  // throws Error{Structural} for 0
  static SpoofMode no_signal() { return {SpoofKind::NoSignal, 0.0}; }
};

const char* to_string(SpoofKind kind) noexcept;
SpoofKind spoof_kind_from_string(std::string_view name);  // throws Error{Parse}

class Snapshot {
 public:
  Snapshot() = default;
  Snapshot(std::vector<std::complex<float>> samples, double sample_rate, std::int64_t start_ns);

  std::span<const std::complex<float>> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double sample_rate() const noexcept { return sample_rate_; }
  std::int64_t start_ns() const noexcept { return start_ns_; }
  GstTime start() const { return GstTime::from_nanoseconds(start_ns_); }
  GstTime end() const { return start() + static_cast<double>(samples_.size()) / sample_rate_; }
  double duration() const noexcept { return static_cast<double>(samples_.size()) / sample_rate_; }

  friend bool operator==(const Snapshot&, const Snapshot&) = default;

 private:
  std::vector<std::complex<float>> samples_;
  double sample_rate_ = kDefaultSampleRate;
  std::int64_t start_ns_ = 0;
};

// 40.3 TEC / f^2, meters.
double iono_delay_m(double tec, double frequency_hz);

// Receiver-clock delay of the E6 signal at the reference epoch:
// tau_prop - dt_sat + BGD + I_E6/c + HWB + dt_rx + multipath.
double e6_signal_delay(const SatelliteTruth& sat, const ReceiverTruth& rx);

// d(delay)/dt implied by the E1 Doppler, s/s.
double delay_rate(const SatelliteTruth& sat);

// Carrier offset applied to the E6 component: doppler_e1 * f6 / f1.
double e6_doppler(const SatelliteTruth& sat);

// Integrate-and-dump rendering of chips onto a sample grid. Sample m covers
// chip coordinates [first + m*step, first + (m+1)*step); chip k occupies
// [k, k+1) and is zero outside the sequence. Requires 0 < step <= 1.
void render_chips(std::span<const Chip> chips, double first, double step, std::span<float> out);

// out[m] = exp(j * (phase0 + m * phase_step)), evaluated in double precision.
void fill_phasor(std::span<std::complex<float>> out, double phase0, double phase_step);

struct SynthesisConfig {
  double sample_rate = kDefaultSampleRate;
  std::uint64_t noise_seed = 1;
  bool noise_enabled = true;
  SpoofMode spoof;
  std::int64_t reference_second = 0;  // epoch of SatelliteTruth delays and phases
};

// Snapshot covering [window.start, window.end) of receiver time. Each truth
// needs a chip model with the same SVID (Error{Structural} otherwise); an
// empty window is rejected the same way. Deterministic given the seed.
Snapshot synthesize(std::span<const SatelliteTruth> truths, const ReceiverTruth& rx,
                    const TimeWindow& window, std::span<const ChipStreamModel> models,
                    const SynthesisConfig& config);

Octets write_snapshot(const Snapshot& snapshot);
Snapshot read_snapshot(std::span<const std::uint8_t> bytes);  // BadMagic / BadVersion / Truncated

}  // namespace acas
