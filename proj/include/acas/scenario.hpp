#pragma once

// Desk-scale scenario: everything needed to run the generate -> simulate ->
// authenticate chain. Stored as JSON; every field has a default.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acas/auth_check.hpp"
#include "acas/correlator.hpp"
#include "acas/octets.hpp"
#include "acas/recs_format.hpp"
#include "acas/signal_sim.hpp"

namespace acas {

// One-sigma errors of the E1-side estimates handed to the receiver, meters.
// Each run draws one realization from these.
struct E1ErrorModel {
  double sigma_n_e1 = 0.5;
  double sigma_mp_e1 = 0.5;
  double sigma_i_e1 = 1.0;
  double sigma_hwb = 0.3;
  double sigma_bgd = 0.3;
  double sigma_mp_e6 = 0.5;
  double epoch = 0.0;  // tau_e1 measurement time relative to GST_j, s
};

struct Scenario {
  Octets chain_seed = Octets(16, 0x5a);
  std::int64_t block0_gst = 1'000'000'020;
  std::size_t chain_length = 0;  // 0: just long enough for the RECS files
  std::string encryption_seed = "acas-e6c";

  RecsFileHeader recs;  // svid is filled per satellite
  std::optional<std::int64_t> auth_gst;  // slot second to authenticate; default start_gst
  std::optional<std::int64_t> now_gst;   // receiver clock for key disclosure

  ReceiverTruth receiver;
  std::vector<SatelliteTruth> satellites;
  E1ErrorModel e1_errors;
  ErrorBudget budget;
  double k = 3.0;
  IonoCoefficientMode iono_mode = IonoCoefficientMode::Squared;

  SpoofMode spoof;
  std::uint64_t seed = 1;
  double sample_rate = kDefaultSampleRate;
  SearchWindow search;
  CorrelatorConfig correlator;

  std::int64_t slot_gst() const { return auth_gst.value_or(static_cast<std::int64_t>(recs.start_gst)); }
};

// Throws Error{Validation} naming the offending field.
void validate(const Scenario& scenario);

// Keys absent from the JSON keep the values of default_scenario(); a
// "satellites" array replaces the default list. Throws Error{Parse} for
// malformed JSON, wrong types or unknown keys, then validates.
Scenario parse_scenario(std::string_view json_text);

std::string scenario_to_json(const Scenario& scenario);

// Six satellites with spread geometry, 10-minute RECS files.
Scenario default_scenario();

}  // namespace acas
