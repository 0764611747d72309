#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "spatialgen/errors.hpp"
#include "spatialgen/rng.hpp"
#include "spatialgen/validate.hpp"

using namespace spatialgen;

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(42, 7), b(42, 7);
  for (int k = 0; k < 1000; ++k) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, DistinctStreamsDiffer) {
  RngStream a(42, 0), b(42, 1);
  int equal = 0;
  for (int k = 0; k < 100; ++k) equal += a.next_u64() == b.next_u64();
  EXPECT_EQ(equal, 0);
}

TEST(RngStream, SplitDoesNotAdvanceParent) {
  RngStream a(5), b(5);
  (void)a.split(3);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  RngStream c = a.split(3), d = b.split(3);
  EXPECT_EQ(c.next_u64(), d.next_u64());
  RngStream e = a.split(4);
  RngStream f = a.split(3);
  EXPECT_NE(e.next_u64(), f.next_u64());
}

TEST(RngStream, UniformRanges) {
  RngStream s(1);
  for (int k = 0; k < 100000; ++k) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = s.uniform_open();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
    ASSERT_LT(s.uniform_index(7), 7u);
  }
  EXPECT_THROW(s.uniform_index(0), InvalidParameter);
}

namespace {

template <class F>
std::vector<double> draw(int n, F&& f) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = f();
  return v;
}

}  // namespace

TEST(RngStream, NormalMoments) {
  RngStream s(2);
  auto v = draw(200000, [&] { return s.std_normal(); });
  const MeanSe m = mean_and_se(v);
  EXPECT_LT(std::fabs(m.mean) / m.se, 4.0);
  const MeanSe var = variance_and_se(v);
  EXPECT_LT(std::fabs(var.mean - 1.0) / var.se, 4.0);
}

TEST(RngStream, ComplexNormalComponentsUncorrelated) {
  RngStream s(3);
  std::vector<double> prod;
  for (int k = 0; k < 100000; ++k) {
    auto [re, im] = s.complex_std_normal();
    prod.push_back(re * im);
  }
  const MeanSe m = mean_and_se(prod);
  EXPECT_LT(std::fabs(m.mean) / m.se, 4.0);
}

class PoissonMean : public ::testing::TestWithParam<double> {};

TEST_P(PoissonMean, MeanAndVarianceMatch) {
  const double mu = GetParam();
  RngStream s(4);
  auto v = draw(100000, [&] { return static_cast<double>(s.poisson(mu)); });
  const MeanSe m = mean_and_se(v);
  EXPECT_LT(std::fabs(m.mean - mu) / m.se, 4.0) << "mean " << m.mean;
  const MeanSe var = variance_and_se(v);
  EXPECT_LT(std::fabs(var.mean - mu) / var.se, 4.0) << "var " << var.mean;
}

INSTANTIATE_TEST_SUITE_P(Means, PoissonMean, ::testing::Values(0.05, 0.9, 5.0, 29.0, 31.0, 200.0, 6000.0));

TEST(RngStream, PoissonZeroMean) {
  RngStream s(4);
  EXPECT_EQ(s.poisson(0.0), 0u);
  EXPECT_THROW(s.poisson(-1.0), InvalidParameter);
}

class GammaMoments : public ::testing::TestWithParam<double> {};

TEST_P(GammaMoments, MeanAndVarianceMatch) {
  const double shape = GetParam();
  const double rate = 2.5;
  RngStream s(6);
  auto v = draw(100000, [&] { return s.gamma(shape, rate); });
  for (double x : v) ASSERT_GE(x, 0.0);
  const MeanSe m = mean_and_se(v);
  EXPECT_LT(std::fabs(m.mean - shape / rate) / m.se, 4.0);
  const MeanSe var = variance_and_se(v);
  EXPECT_LT(std::fabs(var.mean - shape / (rate * rate)) / var.se, 4.0);
}

INSTANTIATE_TEST_SUITE_P(Shapes, GammaMoments, ::testing::Values(0.01, 0.3, 1.0, 4.0, 50.0));

TEST(RngStream, ExponentialMean) {
  RngStream s(8);
  auto v = draw(100000, [&] { return s.exponential(4.0); });
  const MeanSe m = mean_and_se(v);
  EXPECT_LT(std::fabs(m.mean - 0.25) / m.se, 4.0);
}

TEST(RngStream, InvalidDistributionParameters) {
  RngStream s(1);
  EXPECT_THROW(s.gamma(0.0, 1.0), InvalidParameter);
  EXPECT_THROW(s.gamma(1.0, -1.0), InvalidParameter);
  EXPECT_THROW(s.exponential(0.0), InvalidParameter);
}
