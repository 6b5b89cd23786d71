#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "acas/auth_check.hpp"
#include "acas/constants.hpp"
#include "acas/error.hpp"

using namespace acas;
namespace c = acas::constants;

TEST(SigmaAuth, SingleTerms) {
  ErrorBudget b;
  b.sigma_n_e1 = 1.0;
  EXPECT_DOUBLE_EQ(sigma_auth(b), 1.0);
  b = {};
  b.sigma_i_e1 = 2.0;
  EXPECT_NEAR(sigma_auth(b), 1.035648, 1e-9);
  EXPECT_NEAR(sigma_auth(b, c::kF1, c::kF1), 0.0, 1e-15);
}

TEST(SigmaAuth, AllOnesBothModes) {
  ErrorBudget ones{1, 1, 1, 1, 1, 1, 1};
  EXPECT_NEAR(sigma_auth(ones, c::kF1, c::kF6, IonoCoefficientMode::Literal), 2.553002938, 1e-8);
  EXPECT_NEAR(sigma_auth(ones, c::kF1, c::kF6, IonoCoefficientMode::Squared),
              std::sqrt(6.0 + 0.517824 * 0.517824), 1e-12);
  EXPECT_EQ(iono_mode_from_string("literal"), IonoCoefficientMode::Literal);
  EXPECT_THROW(iono_mode_from_string("cubed"), Error);
}

TEST(SigmaAuth, MonotoneInEveryComponent) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int t = 0; t < 200; ++t) {
    ErrorBudget b{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    double* fields[] = {&b.sigma_hwb,   &b.sigma_bgd,  &b.sigma_i_e1, &b.sigma_mp_e6,
                        &b.sigma_mp_e1, &b.sigma_n_e6, &b.sigma_n_e1};
    for (double* f : fields) {
      for (auto mode : {IonoCoefficientMode::Squared, IonoCoefficientMode::Literal}) {
        const double before = sigma_auth(b, c::kF1, c::kF6, mode);
        const double saved = *f;
        *f += u(rng);
        EXPECT_GE(sigma_auth(b, c::kF1, c::kF6, mode), before);
        *f = saved;
      }
    }
  }
  ErrorBudget neg;
  neg.sigma_bgd = -1.0;
  EXPECT_THROW(sigma_auth(neg), Error);
}

TEST(VerifyMeasurement, ThresholdAndBoundary) {
  auto v = verify_measurement(0.08, 0.08, 2.0, 3.0);
  EXPECT_TRUE(v.xi);
  EXPECT_DOUBLE_EQ(v.gamma, 6.0);
  EXPECT_EQ(v.residual, 0.0);

  const double sigma = 2.0;
  const double tau_hat = 0.08;
  v = verify_measurement(tau_hat + 3.1 * sigma / c::kSpeedOfLight, tau_hat, sigma, 3.0);
  EXPECT_FALSE(v.xi);
  v = verify_measurement(tau_hat - 3.1 * sigma / c::kSpeedOfLight, tau_hat, sigma, 3.0);
  EXPECT_FALSE(v.xi);
  v = verify_measurement(tau_hat + 2.9 * sigma / c::kSpeedOfLight, tau_hat, sigma, 3.0);
  EXPECT_TRUE(v.xi);

  // |residual| == gamma passes.
  const double tau = tau_hat + 1e-8;
  const double r = c::kSpeedOfLight * (tau - tau_hat);
  v = verify_measurement(tau, tau_hat, r, 1.0);
  EXPECT_EQ(v.gamma, std::abs(v.residual));
  EXPECT_TRUE(v.xi);

  EXPECT_THROW(verify_measurement(0, 0, 0.0, 3.0), Error);
  EXPECT_THROW(verify_measurement(0, 0, 1.0, 0.0), Error);
}

TEST(VerifyPosition, ExactConjunction) {
  for (std::size_t kappa = 1; kappa <= 8; ++kappa) {
    auto xis = std::make_unique<bool[]>(kappa);
    for (std::uint32_t pattern = 0; pattern < (1u << kappa); ++pattern) {
      for (std::size_t i = 0; i < kappa; ++i) xis[i] = (pattern >> i) & 1u;
      const bool expected = pattern == (1u << kappa) - 1;
      EXPECT_EQ(verify_position(std::span<const bool>(xis.get(), kappa)), expected);
    }
  }
  EXPECT_THROW(verify_position({}), Error);
}

TEST(Assess, UndetectedMeansRejected) {
  auto e = assess(3, 0.08, 0.08, 5.0, false, 2.0, 3.0);
  EXPECT_FALSE(e.xi);
  e = assess(3, 0.08, 0.08, 50.0, true, 2.0, 3.0);
  EXPECT_TRUE(e.xi);
  auto r = make_report({e, assess(4, 0.08, 0.08, 5.0, false, 2.0, 3.0)}, 2.0, 3.0);
  EXPECT_FALSE(r.position_authenticated);
  EXPECT_THROW(make_report({}, 2.0, 3.0), Error);
}

// Per-satellite rejection under nominal residuals follows 2(1 - Phi(K)).
TEST(VerifyMeasurement, GaussianFalseRejectRate) {
  const ErrorBudget b{0.3, 0.3, 1.0, 0.5, 0.5, 2.0, 0.5};
  const double sigma = sigma_auth(b);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> residual(0.0, sigma);
  for (double k : {2.0, 3.0}) {
    const int n = 100000;
    int rejects = 0;
    for (int i = 0; i < n; ++i) {
      rejects += !verify_measurement(0.08 + residual(rng) / c::kSpeedOfLight, 0.08, sigma, k).xi;
    }
    const double p = std::erfc(k / std::sqrt(2.0));
    const double se = std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR(static_cast<double>(rejects) / n, p, 3 * se) << "K = " << k;
  }
}
