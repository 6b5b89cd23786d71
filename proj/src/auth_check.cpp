#include "acas/auth_check.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "acas/error.hpp"

namespace acas {

void validate(const ErrorBudget& b) {
  for (double v : {b.sigma_hwb, b.sigma_bgd, b.sigma_i_e1, b.sigma_mp_e6, b.sigma_mp_e1, b.sigma_n_e6,
                   b.sigma_n_e1}) {
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorKind::Structural, "error budget terms must be >= 0");
  }
}

const char* to_string(IonoCoefficientMode mode) noexcept {
  return mode == IonoCoefficientMode::Squared ? "squared" : "literal";
}

IonoCoefficientMode iono_mode_from_string(std::string_view name) {
  if (name == "squared") return IonoCoefficientMode::Squared;
  if (name == "literal") return IonoCoefficientMode::Literal;
  throw Error(ErrorKind::Parse, "unknown ionosphere coefficient mode '" + std::string(name) + "'");
}

double sigma_auth(const ErrorBudget& b, double f1, double f6, IonoCoefficientMode mode) {
  validate(b);
  const double r = f1 / f6;
  const double coeff = std::abs(r * r - 1.0);
  const double iono = mode == IonoCoefficientMode::Squared ? std::pow(b.sigma_i_e1 * coeff, 2)
                                                           : b.sigma_i_e1 * b.sigma_i_e1 * coeff;
  return std::sqrt(b.sigma_hwb * b.sigma_hwb + b.sigma_bgd * b.sigma_bgd + iono +
                   b.sigma_mp_e6 * b.sigma_mp_e6 + b.sigma_mp_e1 * b.sigma_mp_e1 +
                   b.sigma_n_e6 * b.sigma_n_e6 + b.sigma_n_e1 * b.sigma_n_e1);
}

Verdict verify_measurement(double tau_e6, double tau_hat_e6, double sigma, double k) {
  if (!(sigma > 0.0) || !(k > 0.0)) throw Error(ErrorKind::Structural, "sigma_auth and K must be > 0");
  Verdict v;
  v.gamma = k * sigma;
  v.residual = constants::kSpeedOfLight * (tau_e6 - tau_hat_e6);
  v.xi = std::abs(v.residual) <= v.gamma;
  return v;
}

bool verify_position(std::span<const bool> xis) {
  if (xis.empty()) throw Error(ErrorKind::Structural, "position verdict needs at least one measurement");
  for (bool x : xis) {
    if (!x) return false;
  }
  return true;
}

AuthEntry assess(int svid, double tau_e6, double tau_hat_e6, double peak_metric, bool detected,
                 double sigma, double k) {
  Verdict v = verify_measurement(tau_e6, tau_hat_e6, sigma, k);
  AuthEntry e;
  e.svid = svid;
  e.tau_e6 = tau_e6;
  e.tau_hat_e6 = tau_hat_e6;
  e.residual = v.residual;
  e.gamma = v.gamma;
  e.peak_metric = peak_metric;
  e.detected = detected;
  e.xi = detected && v.xi;
  return e;
}

AuthReport make_report(std::vector<AuthEntry> entries, double sigma, double k) {
  auto xis = std::make_unique<bool[]>(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) xis[i] = entries[i].xi;
  AuthReport r;
  r.position_authenticated = verify_position(std::span<const bool>(xis.get(), entries.size()));
  r.entries = std::move(entries);
  r.sigma = sigma;
  r.k = k;
  return r;
}

}  // namespace acas
