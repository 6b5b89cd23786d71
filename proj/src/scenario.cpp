#include "acas/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <set>
#include <string>

#include "acas/error.hpp"

namespace acas {

namespace c = constants;
using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::Validation, what); }

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> known) {
  if (!obj.is_object()) throw Error(ErrorKind::Parse, std::string(where) + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw Error(ErrorKind::Parse, std::string(where) + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& dst) {
  if (auto it = obj.find(key); it != obj.end()) dst = it->get<T>();
}

json to_json(const SatelliteTruth& s) {
  return {{"svid", s.svid},           {"tau_prop", s.tau_prop},     {"dt_sat_e1", s.dt_sat_e1},
          {"bgd", s.bgd_true},        {"tec", s.tec},               {"doppler_e1", s.doppler_e1},
          {"cn0", s.cn0},             {"multipath_e6", s.multipath_e6}, {"carrier_phase", s.carrier_phase}};
}

SatelliteTruth satellite_from(const json& j) {
  reject_unknown(j, "satellites[]", {"svid", "tau_prop", "dt_sat_e1", "bgd", "tec", "doppler_e1", "cn0",
                                     "multipath_e6", "carrier_phase"});
  SatelliteTruth s;
  read(j, "svid", s.svid);
  read(j, "tau_prop", s.tau_prop);
  read(j, "dt_sat_e1", s.dt_sat_e1);
  read(j, "bgd", s.bgd_true);
  read(j, "tec", s.tec);
  read(j, "doppler_e1", s.doppler_e1);
  read(j, "cn0", s.cn0);
  read(j, "multipath_e6", s.multipath_e6);
  read(j, "carrier_phase", s.carrier_phase);
  return s;
}

}  // namespace

void validate(const Scenario& s) {
  if (s.chain_seed.empty() || s.chain_seed.size() > 32) invalid("chain.seed must be 1..32 octets");
  if (s.block0_gst < 0 || s.block0_gst % c::kOsnmaBlockSeconds != 0) {
    invalid("chain.block0_gst must be a non-negative multiple of 30");
  }
  if (s.satellites.empty()) invalid("satellites: at least one satellite required");

  std::set<int> seen;
  for (const auto& sat : s.satellites) {
    if (sat.svid < 1 || sat.svid > c::kMaxSvid) invalid("satellites: svid outside 1..36");
    if (!seen.insert(sat.svid).second) invalid("satellites: duplicate svid " + std::to_string(sat.svid));
    if (sat.tau_prop < 0.06 || sat.tau_prop > 0.11) invalid("satellites: tau_prop outside [0.06, 0.11] s");
    if (sat.cn0 < 20.0 || sat.cn0 > 60.0) invalid("satellites: cn0 outside [20, 60] dB-Hz");
    if (sat.tec < 0.0) invalid("satellites: tec must be >= 0");
    for (double v : {sat.dt_sat_e1, sat.bgd_true, sat.doppler_e1, sat.multipath_e6, sat.carrier_phase}) {
      if (!std::isfinite(v)) invalid("satellites: non-finite value");
    }
  }

  RecsFileHeader h = s.recs;
  h.svid = static_cast<std::uint8_t>(s.satellites.front().svid);
  validate(h);
  if (static_cast<std::int64_t>(h.start_gst) < s.block0_gst) invalid("recs.start_gst precedes chain.block0_gst");

  const std::int64_t slot = s.slot_gst();
  const auto start = static_cast<std::int64_t>(h.start_gst);
  if (slot < start || slot >= start + static_cast<std::int64_t>(h.slot_count() * h.recs_period) ||
      (slot - start) % h.recs_period != 0) {
    invalid("auth_gst is not a RECS slot second of the file");
  }

  const auto& e = s.e1_errors;
  for (double v : {e.sigma_n_e1, e.sigma_mp_e1, e.sigma_i_e1, e.sigma_hwb, e.sigma_bgd, e.sigma_mp_e6}) {
    if (!std::isfinite(v) || v < 0.0) invalid("e1_errors: sigmas must be >= 0");
  }
  if (!std::isfinite(e.epoch) || std::abs(e.epoch) > 1.0) invalid("e1_errors.epoch must be within 1 s of GST_j");
  try {
    acas::validate(s.budget);
  } catch (const Error&) {
    invalid("budget: sigmas must be >= 0");
  }
  if (sigma_auth(s.budget, c::kF1, c::kF6, s.iono_mode) <= 0.0) invalid("budget: sigma_auth must be > 0");
  if (!(s.k > 0.0)) invalid("K must be > 0");
  if (!(s.sample_rate >= 2.0 * c::kChipRate) || !std::isfinite(s.sample_rate)) {
    invalid("sample_rate must be >= 2 x 5.115 MHz");
  }
  if (!(s.search.t_max > 0.0) || !(s.search.f_max >= 0.0)) invalid("search: t_max > 0 and f_max >= 0 required");
  if (s.correlator.noise_bins < 1) invalid("search.noise_bins must be >= 1");
  if (s.spoof.kind == SpoofKind::StaticReplayShift && s.spoof.shift == 0.0) {
    invalid("spoof.shift must be non-zero for static_replay_shift");
  }
}

Scenario parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("scenario: ") + e.what());
  }

  Scenario s = default_scenario();
  try {
    reject_unknown(j, "scenario", {"chain", "encryption_seed", "recs", "auth_gst", "now_gst", "receiver",
                                   "satellites", "e1_errors", "budget", "K", "iono_mode", "spoof", "seed",
                                   "sample_rate", "search"});
    if (auto it = j.find("chain"); it != j.end()) {
      reject_unknown(*it, "chain", {"seed", "block0_gst", "length"});
      if (it->contains("seed")) s.chain_seed = from_hex(it->at("seed").get<std::string>());
      read(*it, "block0_gst", s.block0_gst);
      read(*it, "length", s.chain_length);
    }
    read(j, "encryption_seed", s.encryption_seed);
    if (auto it = j.find("recs"); it != j.end()) {
      reject_unknown(*it, "recs", {"start_gst", "duration", "period", "n_chips", "offset_ms", "slrecs", "dtau_max"});
      read(*it, "start_gst", s.recs.start_gst);
      read(*it, "duration", s.recs.duration);
      read(*it, "period", s.recs.recs_period);
      read(*it, "n_chips", s.recs.n_chips);
      read(*it, "offset_ms", s.recs.recs_offset_ms);
      read(*it, "slrecs", s.recs.slrecs_offset);
      read(*it, "dtau_max", s.recs.dtau_max);
    }
    if (j.contains("auth_gst")) s.auth_gst = j.at("auth_gst").get<std::int64_t>();
    if (j.contains("now_gst")) s.now_gst = j.at("now_gst").get<std::int64_t>();
    if (auto it = j.find("receiver"); it != j.end()) {
      reject_unknown(*it, "receiver", {"hwb", "dt_rx_e1"});
      read(*it, "hwb", s.receiver.hwb_rx);
      read(*it, "dt_rx_e1", s.receiver.dt_rx_e1);
    }
    if (auto it = j.find("satellites"); it != j.end()) {
      if (!it->is_array()) throw Error(ErrorKind::Parse, "satellites: expected an array");
      s.satellites.clear();
      for (const auto& sat : *it) s.satellites.push_back(satellite_from(sat));
    }
    if (auto it = j.find("e1_errors"); it != j.end()) {
      reject_unknown(*it, "e1_errors", {"sigma_n_e1", "sigma_mp_e1", "sigma_i_e1", "sigma_hwb", "sigma_bgd",
                                        "sigma_mp_e6", "epoch"});
      read(*it, "sigma_n_e1", s.e1_errors.sigma_n_e1);
      read(*it, "sigma_mp_e1", s.e1_errors.sigma_mp_e1);
      read(*it, "sigma_i_e1", s.e1_errors.sigma_i_e1);
      read(*it, "sigma_hwb", s.e1_errors.sigma_hwb);
      read(*it, "sigma_bgd", s.e1_errors.sigma_bgd);
      read(*it, "sigma_mp_e6", s.e1_errors.sigma_mp_e6);
      read(*it, "epoch", s.e1_errors.epoch);
    }
    if (auto it = j.find("budget"); it != j.end()) {
      reject_unknown(*it, "budget", {"sigma_hwb", "sigma_bgd", "sigma_i_e1", "sigma_mp_e6", "sigma_mp_e1",
                                     "sigma_n_e6", "sigma_n_e1"});
      read(*it, "sigma_hwb", s.budget.sigma_hwb);
      read(*it, "sigma_bgd", s.budget.sigma_bgd);
      read(*it, "sigma_i_e1", s.budget.sigma_i_e1);
      read(*it, "sigma_mp_e6", s.budget.sigma_mp_e6);
      read(*it, "sigma_mp_e1", s.budget.sigma_mp_e1);
      read(*it, "sigma_n_e6", s.budget.sigma_n_e6);
      read(*it, "sigma_n_e1", s.budget.sigma_n_e1);
    }
    read(j, "K", s.k);
    if (j.contains("iono_mode")) s.iono_mode = iono_mode_from_string(j.at("iono_mode").get<std::string>());
    if (auto it = j.find("spoof"); it != j.end()) {
      reject_unknown(*it, "spoof", {"mode", "shift"});
      if (it->contains("mode")) s.spoof.kind = spoof_kind_from_string(it->at("mode").get<std::string>());
      read(*it, "shift", s.spoof.shift);
    }
    read(j, "seed", s.seed);
    read(j, "sample_rate", s.sample_rate);
    if (auto it = j.find("search"); it != j.end()) {
      reject_unknown(*it, "search", {"t_max_chips", "f_max", "threshold_db", "noise_bins", "method"});
      if (it->contains("t_max_chips")) s.search.t_max = it->at("t_max_chips").get<double>() / c::kChipRate;
      read(*it, "f_max", s.search.f_max);
      read(*it, "threshold_db", s.correlator.threshold_db);
      read(*it, "noise_bins", s.correlator.noise_bins);
      if (it->contains("method")) {
        auto m = it->at("method").get<std::string>();
        if (m == "auto") s.correlator.method = CorrelationMethod::Auto;
        else if (m == "direct") s.correlator.method = CorrelationMethod::Direct;
        else if (m == "fft") s.correlator.method = CorrelationMethod::Fft;
        else throw Error(ErrorKind::Parse, "search.method must be auto, direct or fft");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("scenario: ") + e.what());
  }
  validate(s);
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  json sats = json::array();
  for (const auto& sat : s.satellites) sats.push_back(to_json(sat));
  const char* method = s.correlator.method == CorrelationMethod::Direct ? "direct"
                       : s.correlator.method == CorrelationMethod::Fft  ? "fft"
                                                                         : "auto";
  json j = {
      {"chain", {{"seed", to_hex(s.chain_seed)}, {"block0_gst", s.block0_gst}, {"length", s.chain_length}}},
      {"encryption_seed", s.encryption_seed},
      {"recs",
       {{"start_gst", s.recs.start_gst},
        {"duration", s.recs.duration},
        {"period", s.recs.recs_period},
        {"n_chips", s.recs.n_chips},
        {"offset_ms", s.recs.recs_offset_ms},
        {"slrecs", s.recs.slrecs_offset},
        {"dtau_max", s.recs.dtau_max}}},
      {"receiver", {{"hwb", s.receiver.hwb_rx}, {"dt_rx_e1", s.receiver.dt_rx_e1}}},
      {"satellites", sats},
      {"e1_errors",
       {{"sigma_n_e1", s.e1_errors.sigma_n_e1},
        {"sigma_mp_e1", s.e1_errors.sigma_mp_e1},
        {"sigma_i_e1", s.e1_errors.sigma_i_e1},
        {"sigma_hwb", s.e1_errors.sigma_hwb},
        {"sigma_bgd", s.e1_errors.sigma_bgd},
        {"sigma_mp_e6", s.e1_errors.sigma_mp_e6},
        {"epoch", s.e1_errors.epoch}}},
      {"budget",
       {{"sigma_hwb", s.budget.sigma_hwb},
        {"sigma_bgd", s.budget.sigma_bgd},
        {"sigma_i_e1", s.budget.sigma_i_e1},
        {"sigma_mp_e6", s.budget.sigma_mp_e6},
        {"sigma_mp_e1", s.budget.sigma_mp_e1},
        {"sigma_n_e6", s.budget.sigma_n_e6},
        {"sigma_n_e1", s.budget.sigma_n_e1}}},
      {"K", s.k},
      {"iono_mode", to_string(s.iono_mode)},
      {"spoof", {{"mode", to_string(s.spoof.kind)}, {"shift", s.spoof.shift}}},
      {"seed", s.seed},
      {"sample_rate", s.sample_rate},
      {"search",
       {{"t_max_chips", s.search.t_max * c::kChipRate},
        {"f_max", s.search.f_max},
        {"threshold_db", s.correlator.threshold_db},
        {"noise_bins", s.correlator.noise_bins},
        {"method", method}}},
  };
  if (s.auth_gst) j["auth_gst"] = *s.auth_gst;
  if (s.now_gst) j["now_gst"] = *s.now_gst;
  return j.dump(2) + "\n";
}

Scenario default_scenario() {
  Scenario s;
  s.recs.start_gst = static_cast<std::uint64_t>(s.block0_gst + 30);
  s.recs.duration = 600;
  s.recs.recs_period = 30;
  s.recs.n_chips = 5120;
  s.recs.recs_offset_ms = 500;
  s.recs.slrecs_offset = 1;
  s.recs.dtau_max = 3;
  s.receiver = {2.0e-9, 1.5e-4};

  struct Geo {
    int svid;
    double tau_prop, dt_sat, bgd, tec, doppler, cn0;
  };
  const Geo geo[] = {
      {2, 0.0772, 3.1e-5, 1.2e-9, 1.0e17, 2410.0, 50.0},    {7, 0.0851, -1.4e-5, -0.8e-9, 2.3e17, -1180.0, 50.5},
      {11, 0.0914, 6.0e-6, 0.4e-9, 3.1e17, -2950.0, 50.0},  {19, 0.0803, -2.2e-5, 2.1e-9, 1.4e17, 860.0, 51.0},
      {24, 0.0968, 1.1e-5, -1.5e-9, 4.0e17, 3120.0, 50.0},  {30, 0.0829, 0.0, 0.9e-9, 1.8e17, -310.0, 52.0},
  };
  for (const auto& g : geo) {
    SatelliteTruth t;
    t.svid = g.svid;
    t.tau_prop = g.tau_prop;
    t.dt_sat_e1 = g.dt_sat;
    t.bgd_true = g.bgd;
    t.tec = g.tec;
    t.doppler_e1 = g.doppler;
    t.cn0 = g.cn0;
    t.carrier_phase = 0.37 * g.svid;
    s.satellites.push_back(t);
  }
  s.budget = {0.3, 0.3, 1.0, 0.5, 0.5, 2.0, 0.5};
  return s;
}

}  // namespace acas
