#pragma once

// Authentication decision: variance budget, per-measurement test and the
// position-level conjunction.

#include <span>
#include <string>
#include <vector>

#include "acas/constants.hpp"

namespace acas {

// One-sigma contributions, meters.
struct ErrorBudget {
  double sigma_hwb = 0.0;
  double sigma_bgd = 0.0;
  double sigma_i_e1 = 0.0;
  double sigma_mp_e6 = 0.0;
  double sigma_mp_e1 = 0.0;
  double sigma_n_e6 = 0.0;
  double sigma_n_e1 = 0.0;
};

void validate(const ErrorBudget& budget);  // Error{Structural} for negative or non-finite terms

// Squared: the ionosphere term enters as (sigma_I * |f1^2/f6^2 - 1|)^2.
// Literal: sigma_I^2 * |f1^2/f6^2 - 1|, as the variance sum is printed.
enum class IonoCoefficientMode { Squared, Literal };

const char* to_string(IonoCoefficientMode mode) noexcept;
IonoCoefficientMode iono_mode_from_string(std::string_view name);  // Error{Parse}

double sigma_auth(const ErrorBudget& budget, double f1 = constants::kF1, double f6 = constants::kF6,
                  IonoCoefficientMode mode = IonoCoefficientMode::Squared);

struct Verdict {
  bool xi = false;
  double gamma = 0.0;     // m
  double residual = 0.0;  // m, c * (tau_e6 - tau_hat_e6)
};

// Requires sigma > 0 and k > 0 (Error{Structural}). |residual| == gamma passes.
Verdict verify_measurement(double tau_e6, double tau_hat_e6, double sigma, double k);

// Conjunction of all xi; Error{Structural} for an empty list.
bool verify_position(std::span<const bool> xis);

struct AuthEntry {
  int svid = 0;
  double tau_e6 = 0.0;
  double tau_hat_e6 = 0.0;
  double residual = 0.0;
  double gamma = 0.0;
  double peak_metric = 0.0;
  bool detected = false;
  bool xi = false;
};

struct AuthReport {
  std::vector<AuthEntry> entries;
  double k = 3.0;
  double sigma = 0.0;
  bool position_authenticated = false;
};

// Builds the entry for one satellite; an undetected correlation gives xi = 0.
AuthEntry assess(int svid, double tau_e6, double tau_hat_e6, double peak_metric, bool detected,
                 double sigma, double k);

// Fills position_authenticated from the entries.
AuthReport make_report(std::vector<AuthEntry> entries, double sigma, double k);

}  // namespace acas
