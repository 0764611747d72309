#include <gtest/gtest.h>

#include <cmath>

#include "spatialgen/errors.hpp"
#include "spatialgen/pointproc.hpp"
#include "spatialgen/validate.hpp"

using namespace spatialgen;

namespace {

IntensitySpec quadratic() {
  return CallableIntensity{[](const Vec2& x) { return 300.0 * (x[0] * x[0] + x[1] * x[1]); },
                           600.0, std::nullopt};
}

template <class F>
MeanSe count_stats(int runs, F&& f) {
  std::vector<double> n;
  for (int k = 0; k < runs; ++k) n.push_back(static_cast<double>(f()));
  return mean_and_se(n);
}

}  // namespace

TEST(Window, Geometry) {
  const Window w{{0, 0}, {2, 0.5}};
  EXPECT_DOUBLE_EQ(w.area(), 1.0);
  EXPECT_TRUE(w.contains({2.0, 0.5}));
  EXPECT_FALSE(w.contains({2.1, 0.5}));
  EXPECT_DOUBLE_EQ(w.dilated(1.0).area(), 4.0 * 2.5);
  EXPECT_THROW((Window{{0, 0}, {0, 1}}.validate()), InvalidParameter);
}

TEST(Intensity, MeanMeasureOfQuadratic) {
  EXPECT_NEAR(mean_measure(quadratic(), Window{}), 200.0, 1e-3);
  EXPECT_DOUBLE_EQ(intensity_bound(quadratic(), Window{}), 600.0);
}

TEST(Intensity, DensityBoundedByThree) {
  // g = lambda / mu(E) = 3 (x^2 + y^2) / 2 peaks at the corner (1, 1)
  const double peak = intensity_at(quadratic(), Window{}, {1.0, 1.0}) / 200.0;
  EXPECT_DOUBLE_EQ(peak, 3.0);
}

TEST(Intensity, ViolatedBoundThrows) {
  const IntensitySpec bad = CallableIntensity{[](const Vec2& x) { return 900.0 * x[0]; }, 600.0, {}};
  EXPECT_THROW(check_intensity_bound(bad, Window{}), InvalidBound);
  RngStream s(1);
  EXPECT_THROW(sample_poisson_thinning(bad, Window{}, s), InvalidBound);
}

TEST(Poisson, ZeroIntensityEmpty) {
  RngStream s(1);
  EXPECT_EQ(sample_poisson_inversion(Homogeneous{0.0}, Window{}, s).size(), 0u);
  EXPECT_EQ(sample_poisson_thinning(Homogeneous{0.0}, Window{}, s).size(), 0u);
}

TEST(Poisson, PointsInsideWindow) {
  RngStream s(2);
  const Window w{{-1, 2}, {3, 2.5}};
  for (const auto& p : sample_poisson_thinning(Homogeneous{50.0}, w, s).points) EXPECT_TRUE(w.contains(p));
}

TEST(Poisson, InversionAndThinningMeanCount) {
  RngStream s(3);
  const MeanSe inv = count_stats(4000, [&] { return sample_poisson_inversion(quadratic(), Window{}, s).size(); });
  const MeanSe thin = count_stats(4000, [&] { return sample_poisson_thinning(quadratic(), Window{}, s).size(); });
  EXPECT_LT(std::fabs(inv.mean - 200.0) / inv.se, 4.0);
  EXPECT_LT(std::fabs(thin.mean - 200.0) / thin.se, 4.0);
  EXPECT_LT(std::fabs(two_sample_z(inv, thin)), 4.0);
}

TEST(Poisson, ConstantIntensityKeepsAllProposals) {
  RngStream a(5), b(5);
  const IntensitySpec flat = CallableIntensity{[](const Vec2&) { return 50.0; }, 50.0, {}};
  const auto p = sample_poisson_thinning(flat, Window{}, a);
  EXPECT_EQ(p.size(), b.poisson(50.0));
}

TEST(Poisson, DisjointQuadrantsUncorrelated) {
  RngStream s(7);
  std::vector<double> prod;
  double ma = 0, mb = 0;
  std::vector<std::pair<double, double>> counts;
  for (int k = 0; k < 5000; ++k) {
    const auto p = sample_poisson_thinning(quadratic(), Window{}, s);
    double a = 0, b = 0;
    for (const auto& x : p.points) {
      if (x[0] < 0.5 && x[1] < 0.5) ++a;
      if (x[0] >= 0.5 && x[1] >= 0.5) ++b;
    }
    counts.emplace_back(a, b);
    ma += a;
    mb += b;
  }
  ma /= counts.size();
  mb /= counts.size();
  for (auto [a, b] : counts) prod.push_back((a - ma) * (b - mb));
  const MeanSe c = mean_and_se(prod);
  EXPECT_LT(std::fabs(c.mean) / c.se, 4.0);
}

TEST(Poisson, CountsArePoissonDispersed) {
  RngStream s(8);
  std::vector<std::uint64_t> counts;
  for (int k = 0; k < 3000; ++k) counts.push_back(sample_poisson_inversion(quadratic(), Window{}, s).size());
  EXPECT_TRUE(dispersion_test(counts).pass);
}

TEST(Marked, UniformMarks) {
  RngStream s(9);
  std::vector<double> marks;
  while (marks.size() < 10000) {
    const auto p = sample_marked_poisson(Homogeneous{100.0}, Window{},
                                         [](RngStream& r) { return r.uniform(0.0, 0.1); }, s);
    ASSERT_EQ(p.marks.size(), p.points.size());
    marks.insert(marks.end(), p.marks.begin(), p.marks.end());
  }
  const MeanSe m = mean_and_se(marks);
  EXPECT_LT(std::fabs(m.mean - 0.05) / m.se, 4.0);
  const auto c = sample_marked_poisson(Homogeneous{20.0}, Window{}, [](RngStream&) { return 2.5; }, s);
  for (double v : c.marks) EXPECT_EQ(v, 2.5);
}

TEST(Hawkes, AlphaZeroGivesCentersOnly) {
  RngStream s(1);
  const auto p = sample_hawkes({30.0, 0.0, 0.02}, Window{}, s);
  EXPECT_EQ(p.points.size(), p.centers.size());
}

TEST(Hawkes, SupercriticalRejected) {
  RngStream s(1);
  EXPECT_THROW(sample_hawkes({30.0, 1.0, 0.02}, Window{}, s), Supercritical);
}

TEST(Hawkes, ExpectedTotal) {
  RngStream s(2);
  const MeanSe m = count_stats(1000, [&] { return sample_hawkes({}, Window{}, s).size(); });
  EXPECT_LT(std::fabs(m.mean - 300.0) / m.se, 4.0);
}

TEST(Hawkes, ClusteredCountsOverdispersed) {
  RngStream s(3);
  std::vector<std::uint64_t> counts;
  for (int k = 0; k < 1000; ++k) counts.push_back(sample_hawkes({}, Window{}, s).size());
  EXPECT_GT(dispersion_test(counts).estimate, 1.0);
}

TEST(NeymanScott, MaternPointsWithinRadiusOfACenter) {
  RngStream s(4);
  const auto p = sample_neyman_scott(20, 5, MaternBall{0.1}, Window{}, s);
  for (const auto& x : p.points) {
    double best = INFINITY;
    for (const auto& c : p.centers) best = std::min(best, std::hypot(x[0] - c[0], x[1] - c[1]));
    EXPECT_LT(best, 0.1);
  }
}

TEST(NeymanScott, AlphaZeroEmpty) {
  RngStream s(4);
  EXPECT_EQ(sample_neyman_scott(20, 0, ThomasGauss{0.02}, Window{}, s).size(), 0u);
}

TEST(NeymanScott, ExpectedCount) {
  RngStream s(5);
  const MeanSe m = count_stats(2000, [&] { return sample_neyman_scott(20, 5, MaternBall{0.1}, Window{}, s).size(); });
  EXPECT_LT(std::fabs(m.mean - 20 * 1.44 * 5) / m.se, 4.0);
  const MeanSe t = count_stats(2000, [&] { return sample_neyman_scott(20, 5, ThomasGauss{0.02}, Window{}, s).size(); });
  EXPECT_LT(std::fabs(t.mean - 20 * 1.16 * 1.16 * 5) / t.se, 4.0);
}

TEST(NeymanScott, ThomasOffsetVariance) {
  RngStream s(6);
  std::vector<double> dx;
  for (int k = 0; k < 200; ++k) {
    const auto p = sample_neyman_scott(5, 1.0, ThomasGauss{0.05}, Window{}, s);
    for (const auto& x : p.points) {
      double best = INFINITY, off = 0;
      for (const auto& c : p.centers) {
        const double d = std::hypot(x[0] - c[0], x[1] - c[1]);
        if (d < best) {
          best = d;
          off = x[0] - c[0];
        }
      }
      dx.push_back(off * off);
    }
  }
  EXPECT_NEAR(mean_and_se(dx).mean, 0.0025, 5 * mean_and_se(dx).se);
}

TEST(Cox, DegenerateSamplers) {
  RngStream s(7);
  EXPECT_EQ(sample_cox([](RngStream&) -> IntensitySpec { return Homogeneous{0.0}; }, Window{}, s).pattern.size(), 0u);
  const MeanSe m = count_stats(10000, [&] {
    return sample_cox([](RngStream&) -> IntensitySpec { return Homogeneous{40.0}; }, Window{}, s).pattern.size();
  });
  EXPECT_LT(std::fabs(m.mean - 40.0) / m.se, 3.5);
}

TEST(Cox, FieldDrivenCellsHalfOpen) {
  Field f(Grid2D(2, 2, 0.5, 0.5), std::vector<double>{0, 1, 0, 0});
  const IntensitySpec spec = FieldDriven{f, [](double v) { return 3000.0 * v; }};
  EXPECT_EQ(intensity_at(spec, Window{}, {0.75, 0.25}), 3000.0);
  EXPECT_EQ(intensity_at(spec, Window{}, {0.5, 0.0}), 3000.0);
  EXPECT_EQ(intensity_at(spec, Window{}, {0.49, 0.0}), 0.0);
  EXPECT_EQ(intensity_at(spec, Window{}, {1.0, 1.0}), 0.0);
  RngStream s(8);
  const auto r = sample_cox([&](RngStream&) { return spec; }, Window{}, s);
  for (const auto& p : r.pattern.points) {
    EXPECT_GE(p[0], 0.5);
    EXPECT_LT(p[1], 0.5);
  }
  EXPECT_GT(r.pattern.size(), 500u);
}

TEST(ShotNoise, CenterIntensityFormula) {
  EXPECT_DOUBLE_EQ(shot_noise_g_center_intensity({1.0, 50.0, 1.0, 0.02}), 50.0);
  EXPECT_DOUBLE_EQ(shot_noise_g_center_intensity({2.0, 10.0, 4.0, 0.02}), 10.0 / 16.0 / 2.0);
}

TEST(ShotNoise, ZeroMarksEmpty) {
  RngStream s(9);
  const auto p = sample_shot_noise_cox(Homogeneous{50.0}, [](const Vec2&, RngStream&) { return 0.0; },
                                       [](const Vec2& c, RngStream&) { return c; }, Window{}, s);
  EXPECT_EQ(p.size(), 0u);
}

TEST(ShotNoise, ExpectedCountByWald) {
  RngStream s(10);
  const ShotNoiseGParams params{2.0, 30.0, 1.5, 0.02};
  const double expected = shot_noise_g_center_intensity(params) * params.alpha / params.lambda;
  const MeanSe m = count_stats(1000, [&] { return sample_shot_noise_g(params, Window{}, s).size(); });
  EXPECT_LT(std::fabs(m.mean - expected) / m.se, 4.0);
}

TEST(Reproducibility, SameSeedSamePattern) {
  RngStream a(77), b(77);
  EXPECT_EQ(sample_hawkes({}, Window{}, a).points, sample_hawkes({}, Window{}, b).points);
}
