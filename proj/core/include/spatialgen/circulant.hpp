#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "spatialgen/fft.hpp"
#include "spatialgen/grid.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen {

/// Spectrum of the stationary covariance on an n x n unit-torus grid.
struct TorusPlan {
  std::size_t n = 0;
  std::vector<double> gamma;  // n*n eigenvalues, row-major, clipped to >= 0
  std::size_t clip_count = 0;
  double min_gamma = 0.0;  // before clipping
};

/// Default relative tolerance for negative torus eigenvalues.
inline constexpr double kTorusClipTolerance = 1e-15;

/// rho is evaluated at the torus distance between (0,0) and (i/n, j/n).
/// Eigenvalues in [-tol * max, 0) are clipped to 0; lower ones throw
/// EmbeddingInfeasible.
TorusPlan plan_torus(std::size_t n, const std::function<double(double)>& rho_of_distance,
                     double clip_tolerance = kTorusClipTolerance);
TorusPlan plan_torus(std::size_t n, const TorusExp& model,
                     double clip_tolerance = kTorusClipTolerance);

/// X = Re(fft2(sqrt(gamma) .* Z)) / n with complex standard normal Z.
Field sample_torus(const TorusPlan& plan, RngStream& stream);

/// Stationary covariance as a function of the lag (hx, hy).
using LagCovariance = std::function<double(double, double)>;

/// Block-circulant embedding of the covariance of a stationary field on a
/// rectangular grid. The embedding array has `rows` x `cols` entries; the
/// minimal choice is (2*ny - 1) x (2*nx - 1).
struct EmbeddingPlan {
  Grid2D grid;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> base;         // first block row of the circulant, row-major
  std::vector<double> eigenvalues;  // real(fft2(base)) / (rows * cols), clipped
  std::vector<double> sqrt_eigenvalues;
  std::size_t clip_count = 0;
  double min_eigenvalue = 0.0;      // before clipping

  /// Side length of the (square) circulant matrix being diagonalized.
  std::size_t circulant_dim() const noexcept { return rows * cols; }
};

/// Builds the embedding. `padding` >= 1 scales each side of the minimal
/// embedding (rounded up); lags wrap at half the embedding period. Throws
/// EmbeddingInfeasible if an eigenvalue is below -1e-15.
EmbeddingPlan plan_embedding(const Grid2D& grid, const LagCovariance& rho, double padding = 1.0);
EmbeddingPlan plan_embedding(const Grid2D& grid, const CovarianceModel& model,
                             double padding = 1.0);

/// Embedding with an explicit rows x cols period; each must be at least the
/// grid extent (ny, nx).
EmbeddingPlan plan_embedding_sized(const Grid2D& grid, const LagCovariance& rho, std::size_t rows,
                                   std::size_t cols);

/// Smallest padding (from {1, 1.25, 1.5, 2, 3, 4}) whose embedding is
/// nonnegative; rethrows the last failure otherwise.
EmbeddingPlan plan_embedding_auto(const Grid2D& grid, const LagCovariance& rho);

struct FieldPair {
  Field first;
  Field second;
};

/// Deterministic part of sampling: F = fft2(sqrt(eig) .* noise); returns the
/// top-left ny x nx blocks of Re F and Im F. `noise` has rows * cols entries.
FieldPair apply_embedding(const EmbeddingPlan& plan, std::span<const Complex> noise);

/// Two independent fields with the target covariance.
FieldPair sample_embedded(const EmbeddingPlan& plan, RngStream& stream);

struct ScalingRow {
  std::size_t n_per_axis = 0;
  std::size_t total_points = 0;
  double circulant_seconds = 0.0;
  double dense_seconds = 0.0;  // negative when skipped
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double circulant_slope_total = 0.0;  // log-log exponent against N = n^2
  double dense_slope_total = 0.0;
  double circulant_slope_axis = 0.0;   // against n (twice the N exponent)
  double dense_slope_axis = 0.0;
};

struct ScalingOptions {
  std::size_t dense_max_points = 4096;
  double min_seconds = 0.2;  // repeat short timings until this much time has passed
  std::uint64_t seed = 1;
};

/// Times plan + sample for the circulant path and factorization + sample for
/// the dense path on n x n unit-square grids with covariance exp(-8 |h|).
/// Dense timings are skipped above `dense_max_points`; slopes use only the
/// sizes that were timed.
ScalingReport benchmark_scaling(const std::vector<std::size_t>& sizes,
                                const ScalingOptions& options = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace spatialgen
