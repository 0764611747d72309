#include <gtest/gtest.h>

#include "spatialgen/dense.hpp"
#include "spatialgen/errors.hpp"
#include "spatialgen/validate.hpp"
#include "support/oracles.hpp"

using namespace spatialgen;

namespace {

Matrix random_spd(Eigen::Index n, std::uint64_t seed) {
  RngStream s(seed);
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = s.std_normal();
  return a * a.transpose() + Matrix::Identity(n, n) * static_cast<double>(n);
}

}  // namespace

TEST(Cholesky, MatchesEigen) {
  for (Eigen::Index n : {1, 2, 5, 40}) {
    const Matrix m = random_spd(n, static_cast<std::uint64_t>(n));
    const Matrix l = cholesky_lower(m);
    EXPECT_LT((l - oracle::eigen_cholesky(m)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((l * l.transpose() - m).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Cholesky, ReportsBadPivot) {
  Matrix m(3, 3);
  m << 1, 0, 0, 0, 1, 1, 0, 1, 1;
  try {
    cholesky_lower(m);
    FAIL();
  } catch (const FactorizationError& e) {
    EXPECT_EQ(e.pivot_index(), 2u);
  }
}

TEST(Cholesky, RejectsOversizedMatrix) {
  EXPECT_THROW(cholesky_lower(Matrix::Identity(kDenseMaxDim + 1, kDenseMaxDim + 1)),
               InvalidParameter);
}

TEST(MvnSpec, ValidatesShapeAndSymmetry) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = 0.5;
  EXPECT_THROW((MvnSpec{Vector::Zero(2), m, MatrixKind::Covariance}.validate()), InvalidParameter);
  EXPECT_THROW((MvnSpec{Vector::Zero(3), Matrix::Identity(2, 2), MatrixKind::Covariance}.validate()),
               InvalidParameter);
}

TEST(DenseSampler, CovarianceMapIsExact) {
  const Matrix c = random_spd(6, 3);
  const DenseGaussianSampler s(MvnSpec{Vector::Zero(6), c, MatrixKind::Covariance});
  Matrix a(6, 6);
  for (Eigen::Index k = 0; k < 6; ++k) a.col(k) = s.apply(Vector::Unit(6, k));
  EXPECT_LT((a * a.transpose() - c).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DenseSampler, PrecisionMapInvertsPrecision) {
  const Matrix q = random_spd(5, 8);
  const DenseGaussianSampler s(MvnSpec{Vector::Zero(5), q, MatrixKind::Precision});
  Matrix a(5, 5);
  for (Eigen::Index k = 0; k < 5; ++k) a.col(k) = s.apply(Vector::Unit(5, k));
  EXPECT_LT((a * a.transpose() - q.inverse()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DenseSampler, KindChecks) {
  const MvnSpec cov{Vector::Zero(2), Matrix::Identity(2, 2), MatrixKind::Covariance};
  const MvnSpec prec{Vector::Zero(2), Matrix::Identity(2, 2), MatrixKind::Precision};
  RngStream s(1);
  EXPECT_THROW(sample_mvn_cov(prec, s), InvalidParameter);
  EXPECT_THROW(sample_mvn_prec(cov, s), InvalidParameter);
}

TEST(DenseSampler, EmpiricalMeanAndCovariance) {
  Matrix c(2, 2);
  c << 2.0, 0.6, 0.6, 1.0;
  Vector mu(2);
  mu << 1.0, -3.0;
  const DenseGaussianSampler sampler(MvnSpec{mu, c, MatrixKind::Covariance});
  RngStream s(12);
  std::vector<double> x0, cross;
  for (int k = 0; k < 50000; ++k) {
    const Vector v = sampler.sample(s);
    x0.push_back(v(0));
    cross.push_back((v(0) - 1.0) * (v(1) + 3.0));
  }
  EXPECT_LT(std::fabs(mean_and_se(x0).mean - 1.0) / mean_and_se(x0).se, 4.0);
  const MeanSe m = mean_and_se(cross);
  EXPECT_LT(std::fabs(m.mean - 0.6) / m.se, 4.0);
}

TEST(ComplexSqrt, RealPartHasTargetCovariance) {
  // B = Bre + i Bim; Re(B Z) with Z = U + iV has covariance Bre Bre' + Bim Bim'.
  RngStream g(2);
  Matrix br(3, 3), bi(3, 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) {
      br(i, j) = g.std_normal();
      bi(i, j) = g.std_normal();
    }
  const Matrix target = br * br.transpose() + bi * bi.transpose();
  RngStream s(5);
  std::vector<double> v01;
  for (int k = 0; k < 40000; ++k) {
    const Vector x = sample_complex_sqrt(br, bi, s);
    v01.push_back(x(0) * x(1));
  }
  const MeanSe m = mean_and_se(v01);
  EXPECT_LT(std::fabs(m.mean - target(0, 1)) / m.se, 4.0);
}

TEST(GridCovariance, MatchesOracle) {
  const Grid2D g(3, 2, 0.5, 2.0);
  auto rho = [](double hx, double hy) { return std::exp(-std::hypot(hx, hy)); };
  const Matrix c = build_grid_covariance(g, rho);
  std::vector<std::array<double, 2>> pts;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 3; ++i) pts.push_back({g.x(i), g.y(j)});
  EXPECT_LT((c - oracle::covariance_of(pts, rho)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MovingAverage, DiscOffsets) {
  EXPECT_EQ(disc_offsets(0.0).size(), 1u);
  EXPECT_EQ(disc_offsets(1.0).size(), 5u);
  EXPECT_EQ(disc_offsets(6.0).size(), 113u);
}

TEST(MovingAverage, ShrinksAndAverages) {
  Field noise(Grid2D(7, 6), 1.0);
  noise(3, 3) = 6.0;
  const Field out = moving_average_field(noise, 1.0);
  EXPECT_EQ(out.nx(), 5u);
  EXPECT_EQ(out.ny(), 4u);
  EXPECT_DOUBLE_EQ(out.grid().origin_x, 1.0);
  EXPECT_DOUBLE_EQ(out(2, 2), 2.0);
  EXPECT_DOUBLE_EQ(out(0, 0), 1.0);
  EXPECT_THROW(moving_average_field(noise, 3.0), InvalidParameter);
}

TEST(MovingAverage, VarianceIsOneOverDiscSize) {
  RngStream s(9);
  std::vector<double> sq;
  for (int k = 0; k < 400; ++k) {
    Field noise(Grid2D(20, 20));
    for (auto& v : noise.values()) v = s.std_normal();
    const Field out = moving_average_field(noise, 2.0);
    sq.push_back(out(3, 3) * out(3, 3));
  }
  const MeanSe m = mean_and_se(sq);
  EXPECT_LT(std::fabs(m.mean - 1.0 / 13.0) / m.se, 4.0);
}
