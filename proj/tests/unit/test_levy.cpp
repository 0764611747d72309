#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "spatialgen/errors.hpp"
#include "spatialgen/levy.hpp"
#include "spatialgen/validate.hpp"
#include "support/oracles.hpp"

using namespace spatialgen;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

class GammaBands : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(GammaBands, QuadratureMatchesClosedForms) {
  const auto [a, b] = GetParam();
  const LevyMeasure1D nu = gamma_levy_measure(3.0);
  EXPECT_NEAR(band_mass(nu, a, b), oracle::gamma_band_mass(3.0, a, b), 1e-9 * oracle::gamma_band_mass(3.0, a, b));
  EXPECT_NEAR(partial_mean(nu, a, b), oracle::gamma_band_mean(3.0, a, b), 1e-10);
  EXPECT_NEAR(partial_second_moment(nu, a, b), oracle::gamma_band_second(3.0, a, b), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Bands, GammaBands,
                         ::testing::Values(std::make_pair(1e-6, 1e-3), std::make_pair(0.001, 1.0),
                                           std::make_pair(0.5, 2.0), std::make_pair(1.0, kInf),
                                           std::make_pair(1e-3, kInf), std::make_pair(30.0, kInf)));

TEST(LevyMeasure, TailMassAndEmptyBands) {
  const LevyMeasure1D nu = gamma_levy_measure(2.0);
  EXPECT_NEAR(tail_mass(nu, 0.01), oracle::gamma_band_mass(2.0, 0.01, kInf), 1e-8);
  EXPECT_EQ(partial_mean(nu, 0.3, 0.3), 0.0);
  EXPECT_THROW(band_mass(nu, 0.0, 1.0), InvalidMeasure);
  EXPECT_THROW(band_mass(nu, 2.0, 1.0), InvalidMeasure);
}

TEST(LevyMeasure, IntegrabilityChecks) {
  EXPECT_NO_THROW(check_integrability(gamma_levy_measure(1.0)));
  const LevyMeasure1D cubic{[](double x) { return 1.0 / (x * x * x); }, {}};
  EXPECT_THROW(check_integrability(cubic), InvalidMeasure);
  const LevyMeasure1D heavy{[](double x) { return 1.0 / x; }, {}};
  EXPECT_THROW(check_integrability(heavy), InvalidMeasure);
  const LevyMeasure1D stable{[](double x) { return std::pow(x, -1.5); }, {}};
  EXPECT_NO_THROW(check_integrability(stable));
}

class JumpBands : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(JumpBands, DrawMomentsMatchNormalizedMeasure) {
  const auto [a, b] = GetParam();
  RngStream s(11);
  std::vector<double> x;
  for (int k = 0; k < 40000; ++k) {
    const double v = gamma_jump_sampler(5.0, a, b, s);
    ASSERT_GT(v, a);
    ASSERT_LE(v, b);
    x.push_back(v);
  }
  const MeanSe m = mean_and_se(x);
  const double target = oracle::gamma_band_mean(5.0, a, b) / oracle::gamma_band_mass(5.0, a, b);
  EXPECT_LT(std::fabs(m.mean - target) / m.se, 4.0) << m.mean << " vs " << target;
}

INSTANTIATE_TEST_SUITE_P(Bands, JumpBands,
                         ::testing::Values(std::make_pair(0.001, 0.01), std::make_pair(0.01, 1.0),
                                           std::make_pair(0.2, 3.0), std::make_pair(1.0, kInf),
                                           std::make_pair(2.0, 2.5), std::make_pair(0.001, kInf)));

TEST(JumpSampler, RejectsEmptyBand) {
  RngStream s(1);
  EXPECT_THROW(gamma_jump_sampler(1.0, 0.5, 0.5, s), InvalidMeasure);
}

TEST(CompoundPoisson, MeanIsRateTimesJump) {
  RngStream s(12);
  std::vector<double> v;
  for (int k = 0; k < 20000; ++k)
    v.push_back(sample_compound_poisson(3.0, [](RngStream& r) { return r.uniform(); }, 2.0, s));
  const MeanSe m = mean_and_se(v);
  EXPECT_LT(std::fabs(m.mean - 3.0) / m.se, 4.0);
}

TEST(LevyPath, ShapeAndValidation) {
  RngStream s(13);
  const LevyPathSpec spec = gamma_process_spec(2.0, 0.01);
  const std::vector<double> t{0.1, 0.5, 1.0};
  const LevyPath p = sample_levy_path(spec, t, s);
  EXPECT_EQ(p.values.size(), 3u);
  EXPECT_EQ(p.epsilon, 0.01);
  EXPECT_THROW(sample_levy_path(spec, std::vector<double>{0.5, 0.2}, s), InvalidParameter);
  EXPECT_THROW(refine_path(p, spec, 0.02, s), InvalidParameter);
  EXPECT_THROW(refine_path(p, spec, 0.0, s), InvalidParameter);
}

TEST(LevyPath, GammaMomentsAtTimeOne) {
  RngStream s(14);
  const double alpha = 4.0, eps = 0.01;
  const LevyPathSpec spec = gamma_process_spec(alpha, eps);
  const std::vector<double> t{0.5, 1.0};
  std::vector<double> x, half;
  for (int k = 0; k < 20000; ++k) {
    const LevyPath p = sample_levy_path(spec, t, s);
    x.push_back(p.values[1]);
    half.push_back(p.values[0]);
  }
  const MeanSe m = mean_and_se(x), v = variance_and_se(x), mh = mean_and_se(half);
  // compensated truncation keeps the full mean alpha t
  EXPECT_LT(std::fabs(m.mean - alpha) / m.se, 4.0);
  EXPECT_LT(std::fabs(mh.mean - alpha / 2) / mh.se, 4.0);
  EXPECT_LT(std::fabs(v.mean - oracle::gamma_band_second(alpha, eps, kInf)) / v.se, 4.0);
}

TEST(LevyPath, RefinementMatchesDirect) {
  RngStream s(15);
  const double alpha = 4.0;
  const LevyPathSpec coarse = gamma_process_spec(alpha, 0.1);
  const LevyPathSpec fine = gamma_process_spec(alpha, 0.001);
  const std::vector<double> t{1.0};
  std::vector<double> refined, direct;
  for (int k = 0; k < 20000; ++k) {
    const LevyPath p = sample_levy_path(coarse, t, s);
    const LevyPath r = refine_path(p, coarse, 0.001, s);
    EXPECT_EQ(r.epsilon, 0.001);
    refined.push_back(r.values[0]);
    direct.push_back(sample_levy_path(fine, t, s).values[0]);
  }
  EXPECT_LT(std::fabs(two_sample_z(mean_and_se(refined), mean_and_se(direct))), 4.0);
  EXPECT_LT(std::fabs(two_sample_z(variance_and_se(refined), variance_and_se(direct))), 4.0);
}

TEST(LevyPath, AgreesWithDirectGammaIncrements) {
  RngStream s(16);
  std::mt19937_64 gen(16);
  const double alpha = 3.0;
  const LevyPathSpec spec = gamma_process_spec(alpha, 1e-4);
  const std::vector<double> t{1.0};
  std::vector<double> a, b;
  for (int k = 0; k < 20000; ++k) {
    a.push_back(sample_levy_path(spec, t, s).values[0]);
    b.push_back(oracle::gamma_process_at_one(alpha, gen));
  }
  EXPECT_LT(std::fabs(two_sample_z(mean_and_se(a), mean_and_se(b))), 4.0);
  EXPECT_LT(std::fabs(two_sample_z(variance_and_se(a), variance_and_se(b))), 4.0);
}

TEST(LevyPath, BrownianPartOnly) {
  RngStream s(17);
  LevyPathSpec spec{1.5, 2.0, gamma_levy_measure(1e-12), 1.0};
  std::vector<double> x;
  for (int k = 0; k < 20000; ++k) x.push_back(sample_levy_path(spec, std::vector<double>{1.0}, s).values[0]);
  const MeanSe v = variance_and_se(x);
  EXPECT_LT(std::fabs(v.mean - 4.0) / v.se, 4.0);
}

TEST(GammaSheet, KernelAndExpectation) {
  const SheetKernel k = bump_kernel(0.1);
  EXPECT_NEAR(k({0.5, 0.5}, {0.5, 0.5}), 0.01, 1e-15);
  EXPECT_NEAR(k({0.5, 0.5}, {0.55, 0.5}), 0.01 - 0.0025, 1e-15);
  EXPECT_EQ(k({0.5, 0.5}, {0.7, 0.5}), 0.0);
  const LevySheetSpec spec = gamma_sheet_spec(20, 0.1, 100, 100);
  double brute = 0.0;
  for (int j = 0; j < 20; ++j)
    for (int i = 0; i < 20; ++i) brute += spec.kernel({0.5, 0.5}, {i / 20.0, j / 20.0});
  EXPECT_NEAR(expected_levy_sheet(spec, {0.5, 0.5}), brute * 100 / (100 * 400.0), 1e-15);
}

TEST(GammaSheet, EvaluationMatchesFullSum) {
  RngStream s(18);
  const LevySheetSpec spec = gamma_sheet_spec(30, 0.12, 50, 10);
  const Field cells = draw_gamma_cells(spec, s);
  for (Vec2 t : {Vec2{0.5, 0.5}, Vec2{0.03, 0.97}, Vec2{0.333, 0.1}}) {
    double full = 0.0;
    for (std::size_t j = 0; j < 30; ++j)
      for (std::size_t i = 0; i < 30; ++i) full += spec.kernel(t, {i / 30.0, j / 30.0}) * cells(j, i);
    EXPECT_NEAR(evaluate_levy_sheet(spec, cells, t), full, 1e-13);
  }
}

TEST(GammaSheet, CellMoments) {
  RngStream s(19);
  const LevySheetSpec spec = gamma_sheet_spec(40, 0.1, 160, 2);
  const Field cells = draw_gamma_cells(spec, s);
  std::vector<double> v(cells.values().begin(), cells.values().end());
  const MeanSe m = mean_and_se(v);
  EXPECT_LT(std::fabs(m.mean - 0.05) / m.se, 4.0);
  const MeanSe var = variance_and_se(v);
  EXPECT_LT(std::fabs(var.mean - 0.025) / var.se, 4.0);
}

TEST(GammaSheet, SampleShape) {
  RngStream s(20);
  const Field f = sample_gamma_sheet(gamma_sheet_spec(20, 0.1, 100, 100), 16, s);
  EXPECT_EQ(f.nx(), 16u);
  EXPECT_TRUE(f.all_finite());
  for (double v : f.values()) EXPECT_GE(v, 0.0);
}
