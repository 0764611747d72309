#include <gtest/gtest.h>

#include "spatialgen/errors.hpp"
#include "spatialgen/gmrf.hpp"
#include "spatialgen/validate.hpp"
#include "support/oracles.hpp"

using namespace spatialgen;

TEST(BandMatrix, StorageAndSymmetry) {
  BandMatrix b(5, 2);
  b.lower(3, 1) = 4.0;
  EXPECT_EQ(b(3, 1), 4.0);
  EXPECT_EQ(b(1, 3), 4.0);
  EXPECT_EQ(b(4, 0), 0.0);
  EXPECT_FALSE(b.in_band(4, 0));
  BandMatrix l(5, 2, BandMatrix::Shape::Lower);
  l.lower(3, 1) = 4.0;
  EXPECT_EQ(l(1, 3), 0.0);
}

TEST(LatticePrecision, MatchesDenseOracle) {
  for (std::size_t m : {1, 2, 3, 5}) {
    const BandMatrix q = build_lattice_precision({m, 2.0, -0.5});
    EXPECT_EQ(q.bandwidth(), m);
    EXPECT_EQ((q.to_dense() - oracle::lattice_precision(m, 2.0, -0.5)).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(BandCholesky, MatchesDenseCholesky) {
  const BandMatrix q = build_lattice_precision({6, 4.0, -0.9});
  const BandMatrix l = band_cholesky(q);
  const Matrix ref = oracle::eigen_cholesky(q.to_dense());
  EXPECT_LT((l.to_dense() - ref).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BandCholesky, ProductReconstructsInput) {
  const BandMatrix q = build_lattice_precision({4, 2.0, -0.5});
  const Matrix l = band_cholesky(q).to_dense();
  EXPECT_LT((l * l.transpose() - q.to_dense()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BandCholesky, IndefiniteInputThrows) {
  EXPECT_THROW(band_cholesky(build_lattice_precision({3, 1.0, -0.5})), FactorizationError);
}

TEST(BandBackSubstitute, SolvesTransposedSystem) {
  const BandMatrix l = band_cholesky(build_lattice_precision({3, 2.0, -0.5}));
  std::vector<double> z{1, -2, 0.5, 3, 0, 1, -1, 2, 0.25};
  const auto y = band_back_substitute(l, z);
  const Vector r = l.to_dense().transpose() * Eigen::Map<const Vector>(y.data(), 9);
  for (int k = 0; k < 9; ++k) EXPECT_NEAR(r(k), z[static_cast<std::size_t>(k)], 1e-12);
  EXPECT_THROW(band_back_substitute(l, {1.0}), InvalidParameter);
}

TEST(GmrfSampler, MapHasInversePrecisionCovariance) {
  const LatticeGmrfSpec spec{3, 2.0, -0.5};
  const Matrix sigma = oracle::lattice_precision(3, 2.0, -0.5).inverse();
  const BandMatrix l = band_cholesky(build_lattice_precision(spec));
  Matrix a(9, 9);
  for (int k = 0; k < 9; ++k) {
    std::vector<double> e(9, 0.0);
    e[static_cast<std::size_t>(k)] = 1.0;
    const auto col = band_back_substitute(l, e);
    for (int p = 0; p < 9; ++p) a(p, k) = col[static_cast<std::size_t>(p)];
  }
  EXPECT_LT((a * a.transpose() - sigma).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GmrfSampler, EmpiricalVarianceAndMean) {
  const GmrfSampler sampler({3, 2.0, -0.5});
  const Matrix sigma = oracle::lattice_precision(3, 2.0, -0.5).inverse();
  RngStream s(17);
  std::vector<double> v44, v01, shifted;
  const std::vector<double> mean(9, 5.0);
  for (int k = 0; k < 30000; ++k) {
    const Field f = sampler.sample({}, s);
    v44.push_back(f(1, 1) * f(1, 1));
    v01.push_back(f(0, 0) * f(0, 1));
    shifted.push_back(sampler.sample(mean, s)(2, 0));
  }
  const MeanSe a = mean_and_se(v44), b = mean_and_se(v01), c = mean_and_se(shifted);
  EXPECT_LT(std::fabs(a.mean - sigma(4, 4)) / a.se, 4.0);
  EXPECT_LT(std::fabs(b.mean - sigma(0, 1)) / b.se, 4.0);
  EXPECT_LT(std::fabs(c.mean - 5.0) / c.se, 4.0);
}

TEST(GmrfSampler, FieldShapeAndMeanValidation) {
  const GmrfSampler sampler({4, 2.0, -0.5});
  RngStream s(1);
  const Field f = sampler.sample({}, s);
  EXPECT_EQ(f.nx(), 4u);
  EXPECT_EQ(f.ny(), 4u);
  EXPECT_THROW(sampler.sample(std::vector<double>(3, 0.0), s), InvalidParameter);
}
