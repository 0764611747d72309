#include <gtest/gtest.h>

#include "spatialgen/fft.hpp"
#include "spatialgen/rng.hpp"
#include "support/oracles.hpp"

using namespace spatialgen;

namespace {

std::vector<Complex> random_array(std::size_t n, std::uint64_t seed) {
  RngStream s(seed);
  std::vector<Complex> v(n);
  for (auto& x : v) {
    auto [a, b] = s.complex_std_normal();
    x = {a, b};
  }
  return v;
}

}  // namespace

TEST(Fft2, DeltaGivesOnes) {
  std::vector<Complex> v(12, 0.0);
  v[0] = 1.0;
  for (const auto& x : fft2(v, 3, 4)) EXPECT_NEAR(std::abs(x - Complex(1.0)), 0.0, 1e-15);
}

TEST(Fft2, ConstantConcentratesAtOrigin) {
  std::vector<Complex> v(15, 2.0);
  const auto out = fft2(v, 5, 3);
  EXPECT_NEAR(std::abs(out[0] - Complex(30.0)), 0.0, 1e-12);
  for (std::size_t k = 1; k < out.size(); ++k) EXPECT_NEAR(std::abs(out[k]), 0.0, 1e-12);
}

class Fft2VsDirect : public ::testing::TestWithParam<std::pair<std::size_t, std::size_t>> {};

TEST_P(Fft2VsDirect, MatchesBruteForce) {
  const auto [rows, cols] = GetParam();
  const auto in = random_array(rows * cols, rows * 31 + cols);
  const auto fast = fft2(in, rows, cols);
  const auto slow = oracle::dft2(in, rows, cols);
  for (std::size_t k = 0; k < in.size(); ++k) EXPECT_NEAR(std::abs(fast[k] - slow[k]), 0.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Shapes, Fft2VsDirect,
                         ::testing::Values(std::pair<std::size_t, std::size_t>{4, 4},
                                           std::pair<std::size_t, std::size_t>{3, 5},
                                           std::pair<std::size_t, std::size_t>{1, 7},
                                           std::pair<std::size_t, std::size_t>{6, 1},
                                           std::pair<std::size_t, std::size_t>{15, 15}));

TEST(Fft2, InverseRoundTrip) {
  const auto in = random_array(8 * 6, 9);
  const auto back = ifft2(fft2(in, 8, 6), 8, 6);
  for (std::size_t k = 0; k < in.size(); ++k) EXPECT_NEAR(std::abs(back[k] - in[k]), 0.0, 1e-13);
}

TEST(Fft1, MatchesBruteForce) {
  const auto in = random_array(10, 4);
  const auto fast = fft(in);
  const auto slow = oracle::dft2(in, 1, 10);
  for (std::size_t k = 0; k < in.size(); ++k) EXPECT_NEAR(std::abs(fast[k] - slow[k]), 0.0, 1e-12);
}
