#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "spatialgen/grid.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest dimension accepted by the dense path.
inline constexpr std::size_t kDenseMaxDim = 4096;

/// Lower Cholesky factor L with L L^T = M. Throws FactorizationError when a
/// pivot falls to 1e-12 * max(diag M) or below.
Matrix cholesky_lower(const Matrix& m);

enum class MatrixKind { Covariance, Precision };

struct MvnSpec {
  Vector mean;
  Matrix matrix;
  MatrixKind kind = MatrixKind::Covariance;

  /// Checks shape and symmetry (1e-12 relative).
  void validate() const;
};

/// Factor once, sample many times.
///   Covariance: X = mu + L Z with L L^T = Sigma.
///   Precision:  X = mu + Y with D D^T = Lambda and D^T Y = Z.
class DenseGaussianSampler {
 public:
  explicit DenseGaussianSampler(MvnSpec spec);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(spec_.mean.size()); }
  const Matrix& factor() const noexcept { return factor_; }

  Vector sample(RngStream& stream) const;
  /// Deterministic map from standard normal noise to a sample.
  Vector apply(const Vector& z) const;

 private:
  MvnSpec spec_;
  Matrix factor_;
};

Vector sample_mvn_cov(const MvnSpec& spec, RngStream& stream);
Vector sample_mvn_prec(const MvnSpec& spec, RngStream& stream);

/// Re(B Z) = B_re Z1 - B_im Z2 for complex noise Z = Z1 + i Z2.
Vector sample_complex_sqrt(const Matrix& b_re, const Matrix& b_im, RngStream& stream);

/// Covariance matrix of a stationary field on the grid points, ordered
/// row-major (index j * nx + i).
Matrix build_grid_covariance(const Grid2D& grid, const std::function<double(double, double)>& rho);

/// Integer offsets (u, v) with u^2 + v^2 <= r^2.
std::vector<std::pair<int, int>> disc_offsets(double r);

/// Average of the noise over the disc of radius r (index units) around each
/// cell. The output covers only cells whose full disc lies inside the input,
/// so each side shrinks by 2 * floor(r).
Field moving_average_field(const Field& noise, double r);

}  // namespace spatialgen
