#include "acas/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "acas/constants.hpp"
#include "acas/correlator.hpp"
#include "acas/error.hpp"
#include "acas/slot_crypto.hpp"

namespace acas {

namespace c = constants;
namespace fs = std::filesystem;

namespace {

// Errors enter scaled by sigma; zero sigma never consumes a different
// number of variates, so realizations stay aligned across budgets.
class ErrorDraw {
 public:
  explicit ErrorDraw(std::uint64_t seed) : rng_(seed ^ 0x9e3779b97f4a7c15ULL) {}
  double operator()(double sigma) { return sigma * unit_(rng_); }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> unit_{0.0, 1.0};
};

const BgdRecord& bgd_for(const std::vector<BgdRecord>& records, int svid, std::int64_t gst) {
  for (const auto& r : records) {
    if (r.svid == svid && r.validity_start_gst <= gst && gst < r.validity_end_gst) return r;
  }
  throw Error(ErrorKind::Validation, "no BGD record valid for SVID " + std::to_string(svid));
}

std::size_t slot_index(const RecsFileHeader& h, std::int64_t slot_gst) {
  return static_cast<std::size_t>((slot_gst - static_cast<std::int64_t>(h.start_gst)) / h.recs_period);
}

}  // namespace

Realization realize(const Scenario& s) {
  ErrorDraw draw(s.seed);
  const auto& e = s.e1_errors;
  const std::int64_t gst_j = s.slot_gst();
  const std::int64_t file_end = static_cast<std::int64_t>(s.recs.start_gst + s.recs.duration);

  Realization r;
  r.hwb_hat = s.receiver.hwb_rx + draw(e.sigma_hwb) / c::kSpeedOfLight;
  for (const auto& sat : s.satellites) {
    const double n_e1 = draw(e.sigma_n_e1);
    const double mp_e1 = draw(e.sigma_mp_e1);
    const double iono_err = draw(e.sigma_i_e1);
    const double bgd_err = draw(e.sigma_bgd);
    const double mp_e6 = draw(e.sigma_mp_e6);

    SatelliteTruth t = sat;
    t.multipath_e6 += mp_e6 / c::kSpeedOfLight;
    r.truths.push_back(t);

    const double i_e1 = iono_delay_m(sat.tec, c::kF1);
    E1Estimates est;
    est.svid = sat.svid;
    est.doppler_e1 = sat.doppler_e1;
    est.dt_sat_e1 = sat.dt_sat_e1;
    est.dt_rx_e1 = s.receiver.dt_rx_e1;
    est.tau_prop_hat = sat.tau_prop + i_e1 / c::kSpeedOfLight;
    est.i_e1_hat = std::max(0.0, i_e1 - iono_err);
    est.epoch = e.epoch;
    const double tau_e1_at_gst_j = sat.tau_prop + i_e1 / c::kSpeedOfLight - sat.dt_sat_e1 + s.receiver.dt_rx_e1;
    est.tau_e1 = tau_e1_at_gst_j + delay_rate(sat) * e.epoch + (n_e1 + mp_e1) / c::kSpeedOfLight;
    r.estimates.push_back(est);

    BgdTruth bt;
    bt.bgd_true = sat.bgd_true;
    bt.prediction_error_m = bgd_err;
    bt.sigma_m = e.sigma_bgd;
    bt.validity_start_gst = static_cast<std::int64_t>(s.recs.start_gst);
    bt.validity_end_gst = std::max(file_end, gst_j + 1);
    r.bgd.push_back(predict_bgd(sat.svid, bt));
  }
  return r;
}

RecsFileHeader recs_header(const Scenario& s, int svid) {
  RecsFileHeader h = s.recs;
  h.svid = static_cast<std::uint8_t>(svid);
  return h;
}

KeyChain build_chain(const Scenario& s) {
  std::size_t length = s.chain_length;
  if (length == 0) {
    std::size_t needed = 1;
    for (const auto& sat : s.satellites) {
      auto h = recs_header(s, sat.svid);
      if (h.slot_count() == 0) continue;
      auto last = locate_slot(h, s.block0_gst, h.slot_count() - 1);
      needed = std::max(needed, last.key_block + 1);
    }
    length = needed;
  }
  return KeyChain::generate(s.chain_seed, length, s.block0_gst);
}

ChipStreamModel chip_model(const Scenario& s, int svid) {
  Octets material(s.encryption_seed.begin(), s.encryption_seed.end());
  material.push_back(static_cast<std::uint8_t>(svid));
  ChipStreamModel m;
  m.svid = svid;
  m.k_encr.bytes = sha256(material);
  return m;
}

std::string recs_file_name(int svid) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "E%02d.recs", svid);
  return buf;
}

Publication generate(const Scenario& s) {
  const KeyChain chain = build_chain(s);
  const Realization r = realize(s);
  Publication p;
  for (const auto& sat : s.satellites) {
    p.recs.push_back(build_recs_file(chip_model(s, sat.svid), chain, recs_header(s, sat.svid)));
  }
  p.bgd = r.bgd;
  return p;
}

Octets read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  Octets data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::Io, "read failed: " + path.string());
  return data;
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

void write_publication(const Publication& p, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create directory " + dir.string() + ": " + ec.message());
  for (const auto& f : p.recs) write_file(dir / recs_file_name(f.header.svid), serialize_recs(f));
  const std::string text = serialize_bgd(p.bgd);
  write_file(dir / kBgdFileName, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Publication read_publication(const Scenario& s, const fs::path& dir) {
  Publication p;
  for (const auto& sat : s.satellites) {
    RecsFile f = parse_recs(read_file(dir / recs_file_name(sat.svid)));
    if (f.header.svid != sat.svid) throw Error(ErrorKind::Validation, "RECS file SVID mismatch");
    p.recs.push_back(std::move(f));
  }
  Octets text = read_file(dir / kBgdFileName);
  p.bgd = parse_bgd(std::string_view(reinterpret_cast<const char*>(text.data()), text.size()));
  return p;
}

TimeWindow recording_window(const Scenario& s, const Realization& r) {
  std::vector<BiasConfig> bias;
  double max_rate = 0.0;
  for (std::size_t i = 0; i < s.satellites.size(); ++i) {
    BiasConfig b;
    b.bgd_hat = bgd_for(r.bgd, s.satellites[i].svid, s.slot_gst()).bgd_e1_e6;
    b.hwb_hat = r.hwb_hat;
    bias.push_back(b);
    max_rate = std::max(max_rate, std::abs(r.estimates[i].doppler_e1 / c::kF1));
  }
  const double offset_s = s.recs.recs_offset_ms * 1e-3;
  TimeWindow broad =
      snapshot_window_all(s.slot_gst(), offset_s, r.estimates, bias, s.recs.dtau_max, s.recs.n_chips);
  const double drift = max_rate * (offset_s + broad.length() + std::abs(s.e1_errors.epoch));
  return padded(broad, s.search.t_max + drift + 4.0 / s.sample_rate);
}

Snapshot simulate(const Scenario& s, const Realization& r) {
  std::vector<ChipStreamModel> models;
  for (const auto& sat : s.satellites) models.push_back(chip_model(s, sat.svid));
  SynthesisConfig cfg;
  cfg.sample_rate = s.sample_rate;
  cfg.noise_seed = s.seed;
  cfg.spoof = s.spoof;
  cfg.reference_second = s.slot_gst();
  return synthesize(r.truths, s.receiver, recording_window(s, r), models, cfg);
}

std::int64_t default_now(const Scenario& s) {
  const KeyChain chain = build_chain(s);
  KeyDisclosureFeed feed(chain, DisclosureSchedule{});
  auto h = recs_header(s, s.satellites.front().svid);
  auto loc = locate_slot(h, s.block0_gst, slot_index(h, s.slot_gst()));
  return std::max(feed.disclosure_time(loc.key_block), feed.disclosure_time(iv_block(h, s.block0_gst)));
}

AuthReport authenticate(const Scenario& s, const Realization& r, const Publication& p, const Snapshot& snap,
                        std::int64_t now_gst) {
  // The receiver rebuilds the chain only to stand in for the broadcast; every
  // key it uses passes through the disclosure gate and the root check.
  const KeyChain chain = build_chain(s);
  const KeyDisclosureFeed feed(chain, DisclosureSchedule{});
  const double sigma = sigma_auth(s.budget, c::kF1, c::kF6, s.iono_mode);
  const std::int64_t gst_j = s.slot_gst();

  std::vector<AuthEntry> entries;
  for (std::size_t i = 0; i < s.satellites.size(); ++i) {
    const int svid = s.satellites[i].svid;
    auto file = std::find_if(p.recs.begin(), p.recs.end(), [&](const RecsFile& f) { return f.header.svid == svid; });
    if (file == p.recs.end()) throw Error(ErrorKind::Validation, "no RECS file for SVID " + std::to_string(svid));
    const RecsFileHeader& h = file->header;
    const std::size_t slot = slot_index(h, gst_j);
    const SlotLocation loc = locate_slot(h, chain.block0_gst(), slot);

    const InitVector iv = file_iv(feed.disclosed_key(iv_block(h, chain.block0_gst()), now_gst));
    const SlotCrypto sc = derive_slot_crypto(h, loc, iv, feed.disclosed_key(loc.key_block, now_gst));
    const auto ecs = decrypt_recs(file->slots[slot], sc.key, sc.iv).to_chips();

    BiasConfig bias;
    bias.bgd_hat = bgd_for(p.bgd, svid, gst_j).bgd_e1_e6;
    bias.hwb_hat = r.hwb_hat;
    const E1Estimates& est = r.estimates[i];
    const double ecs_offset = h.recs_offset_ms * 1e-3 + sc.offset.seconds();
    const GstTime transmit_start = GstTime::from_seconds(gst_j) + ecs_offset;
    const double tau_hat = predicted_code_phase(extrapolate_tau_e1(est, ecs_offset, bias),
                                                delta_e1e6(bias, est.i_e1_hat));

    const EcsMeasurement m = correlate_ecs(snap, ecs, transmit_start, tau_hat, doppler_e6(est.doppler_e1, bias),
                                           s.search, s.correlator);
    entries.push_back(assess(svid, m.tau_e6, tau_hat, m.peak_metric, m.detected, sigma, s.k));
  }
  return make_report(std::move(entries), sigma, s.k);
}

std::string format_report(const AuthReport& report, std::int64_t slot_gst) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "GST_j %lld  K %.2f  sigma_auth %.3f m  gamma_auth %.3f m\n",
                static_cast<long long>(slot_gst), report.k, report.sigma, report.k * report.sigma);
  out += line;
  out += "svid  tau_e6 [s]        tau_hat_e6 [s]    residual [m]  peak [dB]  detected  xi\n";
  for (const auto& e : report.entries) {
    double peak_db = e.peak_metric > 0.0 ? 10.0 * std::log10(e.peak_metric) : -INFINITY;
    std::snprintf(line, sizeof line, "E%02d   %.12f  %.12f  %12.3f  %9.2f  %-8s  %d\n", e.svid, e.tau_e6,
                  e.tau_hat_e6, e.residual, peak_db, e.detected ? "yes" : "no", e.xi ? 1 : 0);
    out += line;
  }
  out += report.position_authenticated ? "position: AUTHENTICATED\n" : "position: NOT AUTHENTICATED\n";
  if (!report.position_authenticated) {
    out += "note: xi = 0 may indicate spoofing or degraded signal conditions\n";
  }
  return out;
}

std::string format_records(const AuthReport& report, std::int64_t slot_gst) {
  using nlohmann::json;
  std::string out;
  for (const auto& e : report.entries) {
    json j = {{"svid", e.svid},       {"tau_e6", e.tau_e6}, {"tau_hat_e6", e.tau_hat_e6},
              {"residual_m", e.residual}, {"gamma_auth_m", e.gamma}, {"peak_metric", e.peak_metric},
              {"detected", e.detected}, {"xi", e.xi}};
    out += j.dump() + "\n";
  }
  json summary = {{"gst_j", slot_gst},
                  {"K", report.k},
                  {"sigma_auth_m", report.sigma},
                  {"satellites", report.entries.size()},
                  {"position_authenticated", report.position_authenticated}};
  out += summary.dump() + "\n";
  return out;
}

}  // namespace acas
