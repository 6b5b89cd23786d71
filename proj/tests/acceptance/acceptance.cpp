// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "acas/constants.hpp"
#include "acas/correlator.hpp"
#include "acas/error.hpp"
#include "acas/pipeline.hpp"
#include "acas/simd/kernels.hpp"
#include "acas/slot_crypto.hpp"

using namespace acas;
namespace c = acas::constants;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Octets ascii(const std::string& s) { return Octets(s.begin(), s.end()); }

template <std::size_t N>
std::array<std::uint8_t, N> arr(const std::string& hex) {
  Octets b = from_hex(hex);
  std::array<std::uint8_t, N> a{};
  std::copy(b.begin(), b.end(), a.begin());
  return a;
}

// 1 -------------------------------------------------------------------------
Outcome cipher_vectors() {
  int ok = 0, total = 0;
  auto check = [&](const std::string& got, const std::string& want) {
    ++total;
    ok += got == want;
  };
  check(to_hex(sha256(ascii("abc"))), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  check(to_hex(sha256(ascii(""))), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  check(to_hex(sha256(ascii("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))),
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  check(to_hex(sha256(Octets(1'000'000, 'a'))), "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");

  auto fips_key = arr<32>("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
  check(to_hex(aes256_encrypt_block(fips_key, arr<16>("00112233445566778899aabbccddeeff"))),
        "8ea2b7ca516745bfeafc49904b496089");

  auto key = arr<32>("603deb1015ca71be2b73aef0857d77811f352c073b6108d72d9810a30914dff4");
  auto iv = arr<16>("000102030405060708090a0b0c0d0e0f");
  const std::string plain =
      "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e51"
      "30c81c46a35ce411e5fbc1191a0a52eff69f2445df4f9b17ad2b417be66c3710";
  const std::string cbc =
      "f58c4c04d6e5f1ba779eabfb5f7bfbd69cfc4e967edb808d679f777bc6702c7d"
      "39f23369a9d9bacfa530e26304231461b2eb05e2c39be9fcda6c19078c6a9d1b";
  const std::string ofb =
      "dc7e84bfda79164b7ecd8486985d38604febdc6740d20b3ac88f6ad82a4fb08d"
      "71ab47a086e86eedf39d1c5bba97c4080126141d67f37be8538f5a8be740e484";
  check(to_hex(aes256_cbc_encrypt(key, iv, from_hex(plain))), cbc);
  check(to_hex(aes256_cbc_decrypt(key, iv, from_hex(cbc))), plain);
  check(to_hex(aes256_ofb(key, iv, from_hex(plain))), ofb);
  check(to_hex(aes256_ofb(key, iv, from_hex(ofb))), plain);
  return {ok == total, fmt("%d/%d known-answer vectors bit-exact", ok, total)};
}

// 2 -------------------------------------------------------------------------
Outcome offset_example() {
  std::vector<Block128> blocks(3, Block128{});
  blocks[0][0] = 5;
  const unsigned example = offset_for(OffsetCyphertext(blocks), 1, 1, 3).units;

  int counts[4] = {0, 0, 0, 0};
  int outside = 0, n = 0;
  for (std::uint32_t i = 0; n < 10'000; ++i) {
    ByteWriter w;
    w.u32(i);
    RecsKey k{sha256(w.data())};
    InitVector iv = compute_iv(build_plaintext(i));
    auto cyphertext = generate_offset_cyphertext(k, iv, 3);
    for (int svid = 1; svid <= 36 && n < 10'000; ++svid, ++n) {
      int ms = offset_for(cyphertext, 1, svid, 3).milliseconds();
      if (ms % 8 != 0 || ms < 0 || ms > 24) {
        ++outside;
      } else {
        ++counts[ms / 8];
      }
    }
  }
  bool all_values = counts[0] && counts[1] && counts[2] && counts[3];
  return {example == 1 && outside == 0 && all_values,
          fmt("B=5 -> %u (8 ms); %d offsets: 0/8/16/24 ms = %d/%d/%d/%d, outside %d", example, n, counts[0],
              counts[1], counts[2], counts[3], outside)};
}

// 3 -------------------------------------------------------------------------
Outcome protocol_round_trip() {
  Scenario s = default_scenario();
  s.recs.duration = 600;
  s.recs.recs_period = 30;
  s.recs.n_chips = 5120;
  s.recs.slrecs_offset = 1;
  Publication p = generate(s);
  KeyChain chain = build_chain(s);
  KeyDisclosureFeed feed(chain, DisclosureSchedule{});
  const std::int64_t now = chain.coverage_end() + 30;

  int slots = 0, exact = 0;
  for (const auto& file : p.recs) {
    const auto& h = file.header;
    const InitVector iv = file_iv(feed.disclosed_key(iv_block(h, s.block0_gst), now));
    for (std::size_t i = 0; i < file.slots.size(); ++i) {
      SlotLocation loc = locate_slot(h, s.block0_gst, i);
      SlotCrypto sc = derive_slot_crypto(h, loc, iv, feed.disclosed_key(loc.key_block, now));
      auto ecs = decrypt_recs(file.slots[i], sc.key, sc.iv).to_chips();
      auto truth = chips_at(chip_model(s, h.svid), ecs_start_chip(h, loc, sc.offset), h.n_chips);
      ++slots;
      exact += ecs == truth;
    }
  }
  return {slots == 120 && exact == slots, fmt("%d/%d slots bit-identical to the keystream", exact, slots)};
}

// 4 -------------------------------------------------------------------------
Outcome frequency_ratio() {
  const double got = doppler_e6(-1232.0);
  const double rel = std::abs(got + 1000.0) / 1000.0;
  return {rel <= 1e-9, fmt("doppler_e6(-1232 Hz) = %.12f Hz, rel err %.1e (tol 1e-9)", got, rel)};
}

// 5 -------------------------------------------------------------------------
Outcome ionosphere() {
  const double excess = iono_excess(3.0, {});
  const double i_e1 = iono_delay_m(1e17, c::kF1);
  bool ok = std::abs(excess - 1.55347) <= 1e-5 && std::abs(i_e1 - 1.6237) <= 1e-3;
  return {ok, fmt("iono_excess(3 m) = %.6f m (1.55347 +/- 1e-5); I_E1(1e17) = %.5f m (1.6237 +/- 1e-3)", excess,
                  i_e1)};
}

// 6 -------------------------------------------------------------------------
struct Trial {
  double error_chips = 0.0;
  bool detected = false;
};

Trial loopback_trial(double cn0, bool noise, std::uint64_t seed, double prediction_error) {
  constexpr std::int64_t gst = 1'000'000'050;
  SatelliteTruth sat;
  sat.svid = 5;
  sat.cn0 = cn0;
  std::mt19937_64 rng(seed * 7919 + 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  sat.tau_prop = 0.077 + 0.02 * u(rng);
  sat.doppler_e1 = -3000.0 + 6000.0 * u(rng);
  sat.carrier_phase = 6.28 * u(rng);
  ChipStreamModel model;
  model.svid = 5;
  model.k_encr.bytes = sha256(ascii("acceptance-" + std::to_string(seed)));

  const GstTime ts = GstTime::from_seconds(gst) + 0.508;
  const double tau = e6_signal_delay(sat, {}) + delay_rate(sat) * 0.508;
  const GstTime arrival = ts + tau;
  SynthesisConfig cfg;
  cfg.noise_enabled = noise;
  cfg.noise_seed = seed;
  cfg.reference_second = gst;
  auto snap = synthesize(std::span(&sat, 1), {}, {arrival - 3e-6, arrival + 5120 / c::kChipRate + 3e-6},
                         std::span(&model, 1), cfg);
  auto ecs = chips_at(model, ts, 5120);
  auto m = correlate_ecs(snap, ecs, ts, tau + prediction_error / c::kChipRate, e6_doppler(sat), SearchWindow{});
  return {(m.tau_e6 - tau) * c::kChipRate, m.detected};
}

Outcome correlation_fidelity() {
  double worst_clean = 0.0;
  for (int i = 0; i < 10; ++i) {
    worst_clean = std::max(worst_clean, std::abs(loopback_trial(45.0, false, 10 + i, 0.0).error_chips));
  }

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> pred(-0.5, 0.5);
  int within = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    within += std::abs(loopback_trial(45.0, true, 1000 + i, pred(rng)).error_chips) <= 0.5;
  }

  std::normal_distribution<float> g;
  double worst_rel = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t lags = 1 + rng() % 64;
    std::vector<std::complex<float>> x(1024);
    std::vector<float> r(1024 - lags + 1);
    for (auto& v : x) v = {g(rng), g(rng)};
    for (auto& v : r) v = g(rng) > 0 ? 1.0f : -1.0f;
    auto a = correlate_lags_direct(x, r, lags);
    auto b = correlate_lags_fft(x, r, lags);
    double peak = 0.0, err = 0.0;
    for (std::size_t l = 0; l < lags; ++l) {
      peak = std::max(peak, std::abs(a[l]));
      err = std::max(err, std::abs(a[l] - b[l]));
    }
    worst_rel = std::max(worst_rel, err / peak);
  }
  bool ok = worst_clean <= 0.1 && within >= 190 && worst_rel <= 1e-6;
  return {ok, fmt("noiseless max err %.4f chip (<= 0.1); 45 dB-Hz within 0.5 chip %d/%d (>= 95%%); "
                  "FFT vs direct rel err %.1e (<= 1e-6)",
                  worst_clean, within, trials, worst_rel)};
}

// 7 -------------------------------------------------------------------------
Outcome false_reject_rate() {
  const double sigma = sigma_auth(default_scenario().budget);
  std::mt19937_64 rng(31337);
  std::normal_distribution<double> residual(0.0, sigma);
  const int n = 100'000;
  int rejects = 0;
  for (int i = 0; i < n; ++i) {
    rejects += !verify_measurement(0.08 + residual(rng) / c::kSpeedOfLight, 0.08, sigma, 3.0).xi;
  }
  const double rate = 100.0 * rejects / n;
  return {std::abs(rate - 0.27) <= 0.15, fmt("K=3 rejection %.3f%% over %d trials (0.27 +/- 0.15%%)", rate, n)};
}

// 8 -------------------------------------------------------------------------
Outcome spoof_rejection() {
  const Scenario base = default_scenario();
  const double gamma = base.k * sigma_auth(base.budget, c::kF1, c::kF6, base.iono_mode);
  auto verdict = [](const Scenario& s) {
    Realization r = realize(s);
    return authenticate(s, r, generate(s), simulate(s, r), default_now(s)).position_authenticated;
  };
  int wrong = 0, replay = 0, nominal = 0;
  const int runs = 100;
  for (int i = 0; i < runs; ++i) {
    Scenario s = base;
    s.seed = 1 + static_cast<std::uint64_t>(i);
    nominal += verdict(s);
    s.spoof = SpoofMode::wrong_chips();
    wrong += !verdict(s);
    s.spoof = SpoofMode::static_replay(gamma / c::kSpeedOfLight + 2.0 / c::kChipRate);
    replay += !verdict(s);
  }
  bool ok = wrong == runs && replay == runs && nominal >= 99;
  return {ok, fmt("rejected WrongChips %d/%d, StaticReplayShift %d/%d; nominal accepted %d/%d (>= 99)", wrong,
                  runs, replay, runs, nominal, runs)};
}

// 9 -------------------------------------------------------------------------
RecsFile random_file(std::mt19937_64& rng) {
  RecsFile f;
  f.header.start_gst = rng() % 4'000'000'000ULL;
  f.header.recs_period = std::array<std::uint32_t, 6>{1, 5, 10, 30, 60, 90}[rng() % 6];
  f.header.duration = f.header.recs_period * static_cast<std::uint32_t>(1 + rng() % 8);
  f.header.svid = static_cast<std::uint8_t>(1 + rng() % 36);
  f.header.n_chips = 128 * static_cast<std::uint32_t>(1 + rng() % 64);
  f.header.recs_offset_ms = static_cast<std::uint16_t>(rng() % 1000);
  f.header.slrecs_offset = static_cast<std::uint16_t>(rng() % 8);
  f.header.dtau_max = static_cast<std::uint8_t>(rng() % 256);
  for (std::size_t s = 0; s < f.header.slot_count(); ++s) {
    Octets payload(f.header.slot_bytes());
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng());
    f.slots.emplace_back(payload, SequenceRole::Recs);
  }
  return f;
}

Outcome format_robustness() {
  std::mt19937_64 rng(4242);
  int identical = 0;
  std::vector<Octets> encoded;
  for (int i = 0; i < 1000; ++i) {
    RecsFile f = random_file(rng);
    Octets bytes = serialize_recs(f);
    identical += parse_recs(bytes) == f;
    encoded.push_back(std::move(bytes));
  }
  int detected = 0;
  const int flips = 10'000;
  for (int i = 0; i < flips; ++i) {
    Octets bad = encoded[rng() % encoded.size()];
    const std::size_t bit = rng() % (bad.size() * 8);
    bad[bit / 8] ^= static_cast<std::uint8_t>(0x80 >> (bit % 8));
    try {
      parse_recs(bad);
    } catch (const Error&) {
      ++detected;
    }
  }
  return {identical == 1000 && detected == flips,
          fmt("parse(serialize(f)) == f for %d/1000; single-bit corruptions detected %d/%d", identical, detected,
              flips)};
}

// 10 ------------------------------------------------------------------------
Outcome window_containment() {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> tau(0.06, 0.11), clk(-1e-3, 1e-3), bias(-1e-7, 1e-7), iono(0.0, 30.0);
  int bad = 0, checked = 0;
  for (int g = 0; g < 1000; ++g) {
    const std::int64_t gst = 1'000'000'000 + static_cast<std::int64_t>(rng() % 100'000'000);
    const unsigned dtau_max = static_cast<unsigned>(rng() % 16);
    const std::uint32_t n_chips = 128 * static_cast<std::uint32_t>(1 + rng() % 80);
    const double offset = static_cast<double>(rng() % 1000) * 1e-3;
    std::vector<E1Estimates> ests(1 + rng() % 12);
    std::vector<BiasConfig> biases(ests.size());
    for (std::size_t i = 0; i < ests.size(); ++i) {
      ests[i].tau_prop_hat = tau(rng);
      ests[i].dt_sat_e1 = clk(rng);
      ests[i].dt_rx_e1 = clk(rng);
      ests[i].i_e1_hat = iono(rng);
      biases[i].bgd_hat = bias(rng);
      biases[i].hwb_hat = bias(rng);
    }
    auto all = snapshot_window_all(gst, offset, ests, biases, dtau_max, n_chips);
    for (std::size_t i = 0; i < ests.size(); ++i) {
      auto single = snapshot_window_single(gst, offset, ests[i], biases[i], dtau_max, n_chips);
      for (unsigned d = 0; d <= dtau_max; ++d) {
        ++checked;
        bad += !all.contains(narrowed_window(single.start, RandomOffset{d}, n_chips));
      }
    }
  }
  return {bad == 0, fmt("1000 geometries, %d narrowed windows, %d outside the broad window", checked, bad)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "cipher correctness", 1.0, cipher_vectors},
      {2, "offset worked example", 1.0, offset_example},
      {3, "protocol round trip", 10.0, protocol_round_trip},
      {4, "exact frequency ratio", 1.0, frequency_ratio},
      {5, "ionosphere arithmetic", 1.0, ionosphere},
      {6, "correlation fidelity", 120.0, correlation_fidelity},
      {7, "false-reject statistics", 30.0, false_reject_rate},
      {8, "spoof rejection", 300.0, spoof_rejection},
      {9, "format robustness", 30.0, format_robustness},
      {10, "window containment", 5.0, window_containment},
  };

  std::printf("SIMD kernels: %s\n", simd::to_string(simd::active_kernels().isa));
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < cr.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s [%2d] %-24s %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", cr.id, cr.name,
                o.detail.c_str(), secs, cr.budget_s, in_time ? "" : " TOO SLOW");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
