#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "acas/simd/kernels.hpp"

using namespace acas::simd;

namespace {

struct Data {
  std::vector<cf32> x, p, out_a, out_b;
  std::vector<float> r;
};

Data make_data(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<float> g(0.0f, 1.0f);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.x.emplace_back(g(rng), g(rng));
    float ph = g(rng);
    d.p.emplace_back(std::cos(ph), std::sin(ph));
    d.r.push_back(g(rng) > 0 ? 1.0f : -0.5f);
    d.out_a.emplace_back(g(rng), g(rng));
  }
  d.out_b = d.out_a;
  return d;
}

const std::size_t kSizes[] = {0, 1, 3, 4, 7, 8, 9, 15, 16, 17, 31, 1023, 4096, 20461};

}  // namespace

class SimdEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    avx2_ = avx2_kernels();
    if (!avx2_) GTEST_SKIP() << "AVX2 kernels not available";
  }
  const KernelTable* avx2_ = nullptr;
  const KernelTable& scalar_ = scalar_kernels();
};

TEST_F(SimdEquivalence, Mix) {
  for (std::size_t n : kSizes) {
    auto d = make_data(n, n + 1);
    scalar_.mix(d.x.data(), d.p.data(), d.out_a.data(), n);
    avx2_->mix(d.x.data(), d.p.data(), d.out_b.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(d.out_a[i].real(), d.out_b[i].real(), 1e-5f) << n << ":" << i;
      EXPECT_NEAR(d.out_a[i].imag(), d.out_b[i].imag(), 1e-5f) << n << ":" << i;
    }
  }
}

TEST_F(SimdEquivalence, DotReal) {
  for (std::size_t n : kSizes) {
    auto d = make_data(n, n + 2);
    std::complex<double> ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) ref += std::complex<double>(d.x[i]) * static_cast<double>(d.r[i]);
    auto a = scalar_.dot_real(d.x.data(), d.r.data(), n);
    auto b = avx2_->dot_real(d.x.data(), d.r.data(), n);
    const double tol = 1e-9 * (1.0 + static_cast<double>(n));
    EXPECT_NEAR(std::abs(a - ref), 0.0, tol) << n;
    EXPECT_NEAR(std::abs(b - ref), 0.0, tol) << n;
  }
}

TEST_F(SimdEquivalence, Accumulate) {
  for (std::size_t n : kSizes) {
    auto d = make_data(n, n + 3);
    scalar_.accumulate(d.out_a.data(), d.r.data(), d.p.data(), 0.37f, n);
    avx2_->accumulate(d.out_b.data(), d.r.data(), d.p.data(), 0.37f, n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(d.out_a[i].real(), d.out_b[i].real(), 1e-5f);
      EXPECT_NEAR(d.out_a[i].imag(), d.out_b[i].imag(), 1e-5f);
    }
  }
}

TEST_F(SimdEquivalence, Energy) {
  for (std::size_t n : kSizes) {
    auto d = make_data(n, n + 4);
    double ref = 0.0;
    for (const auto& v : d.x) ref += std::norm(std::complex<double>(v));
    EXPECT_NEAR(scalar_.energy(d.x.data(), n), ref, 1e-9 * (1.0 + ref));
    EXPECT_NEAR(avx2_->energy(d.x.data(), n), ref, 1e-9 * (1.0 + ref));
  }
}

TEST(SimdDispatch, ActiveTableIsUsable) {
  const auto& k = active_kernels();
  EXPECT_TRUE(k.isa == Isa::Scalar || k.isa == Isa::Avx2);
  EXPECT_STREQ(to_string(Isa::Scalar), "scalar");
  cf32 x[2] = {{1, 2}, {3, 4}};
  float r[2] = {1, -1};
  EXPECT_EQ(k.dot_real(x, r, 2), std::complex<double>(-2, -2));
}
