#include "acas/signal_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "acas/constants.hpp"
#include "acas/error.hpp"
#include "acas/simd/kernels.hpp"

namespace acas {

namespace c = constants;

namespace {
constexpr std::uint8_t kSnapMagic[4] = {'A', 'C', 'S', 'N'};
}

SpoofMode SpoofMode::static_replay(double shift_s) {
  if (shift_s == 0.0 || !std::isfinite(shift_s)) {
    throw Error(ErrorKind::Structural, "replay shift must be non-zero");
  }
  return {SpoofKind::StaticReplayShift, shift_s};
}

const char* to_string(SpoofKind kind) noexcept {
  switch (kind) {
    case SpoofKind::None: return "none";
    case SpoofKind::WrongChips: return "wrong_chips";
    case SpoofKind::StaticReplayShift: return "static_replay_shift";
    case SpoofKind::NoSignal: return "no_signal";
  }
  return "unknown";
}

SpoofKind spoof_kind_from_string(std::string_view name) {
  for (SpoofKind k : {SpoofKind::None, SpoofKind::WrongChips, SpoofKind::StaticReplayShift,
                      SpoofKind::NoSignal}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorKind::Parse, "unknown spoof mode '" + std::string(name) + "'");
}

Snapshot::Snapshot(std::vector<std::complex<float>> samples, double sample_rate, std::int64_t start_ns)
    : samples_(std::move(samples)), sample_rate_(sample_rate), start_ns_(start_ns) {
  if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_)) {
    throw Error(ErrorKind::Structural, "sample rate must be positive");
  }
}

double iono_delay_m(double tec, double frequency_hz) {
  return c::kIonoConstant * tec / (frequency_hz * frequency_hz);
}

double e6_signal_delay(const SatelliteTruth& sat, const ReceiverTruth& rx) {
  return sat.tau_prop - sat.dt_sat_e1 + sat.bgd_true + iono_delay_m(sat.tec, c::kF6) / c::kSpeedOfLight +
         rx.hwb_rx + rx.dt_rx_e1 + sat.multipath_e6;
}

double delay_rate(const SatelliteTruth& sat) { return -sat.doppler_e1 / c::kF1; }

double e6_doppler(const SatelliteTruth& sat) { return sat.doppler_e1 * c::kF6 / c::kF1; }

void render_chips(std::span<const Chip> chips, double first, double step, std::span<float> out) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw Error(ErrorKind::Structural, "chip render step must be in (0, 1]");
  }
  const auto n_chips = static_cast<std::int64_t>(chips.size());
  auto chip = [&](std::int64_t k) -> float {
    return (k >= 0 && k < n_chips) ? static_cast<float>(chips[static_cast<std::size_t>(k)]) : 0.0f;
  };
  for (std::size_t m = 0; m < out.size(); ++m) {
    double a = first + static_cast<double>(m) * step;
    double b = a + step;
    double edge = std::floor(a) + 1.0;
    auto k = static_cast<std::int64_t>(edge) - 1;
    if (b <= edge) {
      out[m] = chip(k);
    } else {
      out[m] = static_cast<float>(((edge - a) * chip(k) + (b - edge) * chip(k + 1)) / step);
    }
  }
}

void fill_phasor(std::span<std::complex<float>> out, double phase0, double phase_step) {
  constexpr std::size_t kResync = 512;
  const std::complex<double> rot = std::polar(1.0, phase_step);
  std::complex<double> z;
  for (std::size_t m = 0; m < out.size(); ++m) {
    if (m % kResync == 0) {
      z = std::polar(1.0, phase0 + static_cast<double>(m) * phase_step);
    } else {
      z *= rot;
    }
    out[m] = std::complex<float>(static_cast<float>(z.real()), static_cast<float>(z.imag()));
  }
}

namespace {

ChipStreamModel spoofer_model(const ChipStreamModel& genuine, std::uint64_t seed) {
  // The spoofer cannot know the encrypted chips; it transmits its own stream.
  ByteWriter w;
  static constexpr std::uint8_t kTag[] = {'s', 'p', 'o', 'o', 'f'};
  w.bytes(kTag);
  w.u64(seed);
  w.bytes(genuine.k_encr.bytes);
  ChipStreamModel m = genuine;
  m.k_encr.bytes = sha256(w.data());
  return m;
}

const ChipStreamModel& model_for(std::span<const ChipStreamModel> models, int svid) {
  for (const auto& m : models) {
    if (m.svid == svid) return m;
  }
  throw Error(ErrorKind::Structural, "no chip model for SVID " + std::to_string(svid));
}

}  // namespace

Snapshot synthesize(std::span<const SatelliteTruth> truths, const ReceiverTruth& rx,
                    const TimeWindow& window, std::span<const ChipStreamModel> models,
                    const SynthesisConfig& config) {
  const double fs = config.sample_rate;
  if (!(fs >= 2.0 * c::kChipRate)) throw Error(ErrorKind::Structural, "sample rate below 2 x chip rate");
  if (!(window.start < window.end)) throw Error(ErrorKind::Structural, "empty snapshot window");
  for (const auto& sat : truths) {
    model_for(models, sat.svid);
    if (sat.tau_prop < 0.06 || sat.tau_prop > 0.11) {
      throw Error(ErrorKind::Structural, "tau_prop outside [0.06, 0.11] s");
    }
    if (sat.cn0 < 20.0 || sat.cn0 > 60.0) throw Error(ErrorKind::Structural, "C/N0 outside [20, 60] dB-Hz");
  }

  const std::int64_t start_ns = window.start.to_nanoseconds_floor();
  const GstTime start = GstTime::from_nanoseconds(start_ns);
  const auto count = static_cast<std::size_t>(std::ceil((window.end - start) * fs));

  std::vector<std::complex<float>> samples(count);
  if (config.noise_enabled) {
    std::mt19937_64 rng(config.noise_seed);
    std::normal_distribution<float> gauss(0.0f, static_cast<float>(std::sqrt(0.5)));
    for (auto& s : samples) {
      float re = gauss(rng);
      float im = gauss(rng);
      s = {re, im};
    }
  }
  if (config.spoof.kind == SpoofKind::NoSignal || count == 0) {
    return Snapshot(std::move(samples), fs, start_ns);
  }

  const auto& kernels = simd::active_kernels();
  const double t0 = start.seconds_since(config.reference_second);
  const ChipIndex base_chip = config.reference_second * c::kChipsPerSecond;
  std::vector<float> chip_samples(count);
  std::vector<std::complex<float>> phasor(count);

  for (const auto& sat : truths) {
    double delay = e6_signal_delay(sat, rx);
    if (config.spoof.kind == SpoofKind::StaticReplayShift) delay += config.spoof.shift;
    const double rate = delay_rate(sat);

    // Transmit time of receiver time t: (t - delay) / (1 + rate) past the reference epoch.
    const double first = (t0 - delay) / (1.0 + rate) * c::kChipRate;
    const double step = c::kChipRate / (fs * (1.0 + rate));
    const auto k_lo = static_cast<std::int64_t>(std::floor(first));
    const auto k_hi = static_cast<std::int64_t>(std::floor(first + static_cast<double>(count) * step)) + 1;

    ChipStreamModel model = model_for(models, sat.svid);
    if (config.spoof.kind == SpoofKind::WrongChips) model = spoofer_model(model, config.noise_seed);
    auto chips = chips_at(model, base_chip + k_lo, static_cast<std::size_t>(k_hi - k_lo + 1));
    render_chips(chips, first - static_cast<double>(k_lo), step, chip_samples);

    const double f = e6_doppler(sat);
    fill_phasor(phasor, sat.carrier_phase + 2.0 * std::numbers::pi * f * t0,
                2.0 * std::numbers::pi * f / fs);
    const auto amplitude = static_cast<float>(std::sqrt(std::pow(10.0, sat.cn0 / 10.0) / fs));
    kernels.accumulate(samples.data(), chip_samples.data(), phasor.data(), amplitude, count);
  }
  return Snapshot(std::move(samples), fs, start_ns);
}

Octets write_snapshot(const Snapshot& snapshot) {
  ByteWriter w;
  w.reserve(4 + 1 + 8 + 8 + 8 + snapshot.size() * 8);
  for (std::uint8_t b : kSnapMagic) w.u8(b);
  w.u8(kSnapshotFormatVersion);
  w.f64(snapshot.sample_rate());
  w.i64(snapshot.start_ns());
  w.u64(snapshot.size());
  for (const auto& s : snapshot.samples()) {
    w.f32(s.real());
    w.f32(s.imag());
  }
  return std::move(w).take();
}

Snapshot read_snapshot(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), std::begin(kSnapMagic))) {
    throw Error(ErrorKind::BadMagic, "not a snapshot file (bad magic)");
  }
  if (std::uint8_t v = r.u8(); v != kSnapshotFormatVersion) {
    throw Error(ErrorKind::BadVersion, "unsupported snapshot version " + std::to_string(v));
  }
  double fs = r.f64();
  std::int64_t start_ns = r.i64();
  std::uint64_t n = r.u64();
  if (n > r.remaining() / 8) throw Error(ErrorKind::Truncated, "snapshot payload truncated");
  if (r.remaining() != n * 8) throw Error(ErrorKind::Parse, "snapshot has trailing octets");

  std::vector<std::complex<float>> samples(static_cast<std::size_t>(n));
  for (auto& s : samples) {
    float re = r.f32();
    float im = r.f32();
    if (!std::isfinite(re) || !std::isfinite(im)) throw Error(ErrorKind::Parse, "non-finite sample");
    s = {re, im};
  }
  return Snapshot(std::move(samples), fs, start_ns);
}

}  // namespace acas
