#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spatialgen/circulant.hpp"
#include "spatialgen/dense.hpp"
#include "spatialgen/grid.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen {

/// Wiener process at strictly increasing times t_0 >= 0 (W_0 = 0 is implied,
/// so the first value is N(0, t_0)).
std::vector<double> sample_wiener_path(std::span<const double> times, RngStream& stream);

/// mu t + Sigma^{1/2} W_t; row k of the result is the d-vector at times[k].
Matrix sample_brownian_motion_d(const Vector& mu, const Matrix& sigma_sqrt,
                                std::span<const double> times, RngStream& stream);

/// Spectrum of the 2n circulant that embeds the fGn covariance of n + 1 lags.
struct FbmPlan {
  std::size_t n = 0;
  double hurst = 0.5;
  std::vector<double> eigenvalues;  // real(fft(r)) / (2n), clipped
  std::vector<double> sqrt_eigenvalues;
  std::size_t clip_count = 0;
  double min_eigenvalue = 0.0;
};

FbmPlan plan_fbm(std::size_t n, double hurst);

struct FbmPair {
  std::vector<double> first;   // n + 1 values on {0, 1/n, ..., 1}, first = 0
  std::vector<double> second;
};

/// Deterministic part: noise has 2n complex entries.
FbmPair apply_fbm(const FbmPlan& plan, std::span<const Complex> noise);

/// Two independent fBm paths on {0, 1/n, ..., 1}.
FbmPair sample_fbm_pair(const FbmPlan& plan, RngStream& stream);
std::vector<double> sample_fbm(std::size_t n, double hurst, RngStream& stream);

/// 2D fractional Gaussian noise on an n x n lattice, embedded in a 2n x 2n
/// block circulant (a product of two nonnegative 1D spectra).
struct SheetPlan {
  std::size_t n = 0;
  double hurst = 0.5;
  EmbeddingPlan embedding;
};

SheetPlan plan_sheet(std::size_t n, double hurst);

/// Sheets on the (n+1) x (n+1) grid {i/n} x {j/n}, pinned to zero on both axes.
FieldPair sample_sheet_pair(const SheetPlan& plan, RngStream& stream);
Field sample_fractional_wiener_sheet(std::size_t n, double hurst, RngStream& stream);

/// Double cumulative sum of fGn scaled by n^{-2H}, with a leading zero row and
/// column.
Field sheet_from_noise(const Field& fgn, double hurst);

double stein_psi(double h_norm, const SteinConstants& constants, double alpha);

/// Stationary field with covariance psi on [0, R]^2 (ny x nx points, spacing
/// R/(n-1)), embedded in the 2(ny-1) x 2(nx-1) circulant of period 2R.
struct FbfPlan {
  std::size_t m = 0;  // points along y
  std::size_t n = 0;  // points along x
  double hurst = 0.5;
  SteinConstants constants{};
  EmbeddingPlan embedding;
};

FbfPlan plan_fbf(std::size_t m, std::size_t n, double hurst);

struct MaskedFieldPair {
  MaskedField first;
  MaskedField second;
};

/// X(t) = Y(t) - Y(0) + sqrt(2 c2) t.Z applied to both embedded fields with
/// independent Z. Cells outside the quarter disk |t| <= 1 have mask 0 and
/// value 0.
MaskedFieldPair sample_fbf_pair(const FbfPlan& plan, RngStream& stream);
MaskedFieldPair sample_fbf(std::size_t m, std::size_t n, double hurst, RngStream& stream);

/// Covariance of the Wiener pillow or bridge (model must be one of the two).
double pillow_bridge_cov(const CovarianceModel& model, std::span<const double> s,
                         std::span<const double> t);

/// Dense sample of a pillow or bridge (d = 2) at interior points
/// ((i+1)/(k+1), (j+1)/(k+1)), i, j < k.
Field sample_pillow_or_bridge(const CovarianceModel& model, std::size_t k, RngStream& stream);

}  // namespace spatialgen
