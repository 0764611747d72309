#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace spatialgen {

using Vec2 = std::array<double, 2>;

/// Regular 2D grid: point (i, j) sits at (origin_x + i*dx, origin_y + j*dy).
struct Grid2D {
  std::size_t nx = 1;
  std::size_t ny = 1;
  double dx = 1.0;
  double dy = 1.0;
  double origin_x = 0.0;
  double origin_y = 0.0;

  Grid2D() = default;
  Grid2D(std::size_t nx, std::size_t ny, double dx = 1.0, double dy = 1.0,
         double origin_x = 0.0, double origin_y = 0.0);

  std::size_t size() const noexcept { return nx * ny; }
  double x(std::size_t i) const noexcept { return origin_x + static_cast<double>(i) * dx; }
  double y(std::size_t j) const noexcept { return origin_y + static_cast<double>(j) * dy; }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

/// Real values on a Grid2D, stored row-major: row j is the y-index, column i
/// the x-index, so value(j, i) lives at data()[j * nx + i].
class Field {
 public:
  Field() = default;
  explicit Field(Grid2D grid, double fill = 0.0);
  Field(Grid2D grid, std::vector<double> values);

  const Grid2D& grid() const noexcept { return grid_; }
  std::size_t nx() const noexcept { return grid_.nx; }
  std::size_t ny() const noexcept { return grid_.ny; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(std::size_t j, std::size_t i) noexcept { return values_[j * grid_.nx + i]; }
  double operator()(std::size_t j, std::size_t i) const noexcept {
    return values_[j * grid_.nx + i];
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool all_finite() const noexcept;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

/// Field plus a per-cell inclusion mask (1 = inside the region of interest).
struct MaskedField {
  Field field;
  std::vector<std::uint8_t> mask;
};

/// Euclidean distance on the unit torus [0,1)^2.
double torus_distance(const Vec2& s, const Vec2& t);

// ---------------------------------------------------------------------------
// Covariance models

/// exp(-c * |h|_T^alpha) on the unit torus.
struct TorusExp {
  double c;
  double alpha;
  TorusExp(double c, double alpha);
};

/// Anisotropic "wavy" benchmark model with fixed ranges 50 and 15.
struct Wavy {
  static constexpr double kRangeX = 50.0;
  static constexpr double kRangeY = 15.0;
};

/// Fractional Gaussian noise autocovariance at integer lag k.
struct FgnCov1D {
  double alpha;
  explicit FgnCov1D(double alpha);
};

/// Separable 2D fractional Gaussian noise: cov1d(h1) * cov1d(h2).
struct FgnCov2D {
  double alpha;
  explicit FgnCov2D(double alpha);
};

/// Fractional Brownian field, nonstationary: |s|^a + |t|^a - |s-t|^a.
struct FbfCov {
  double alpha;
  explicit FbfCov(double alpha);
};

/// Constants of the compactly supported intrinsic-embedding covariance.
struct SteinConstants {
  double R;
  double beta;
  double c2;
  double c0;
};

/// Table-driven constants: R = 1 for alpha <= 1.5, R = 2 above.
SteinConstants stein_constants(double alpha);

/// Isotropic compactly supported psi(|h|) used for fractional Brownian fields.
struct SteinPsi {
  double alpha;
  SteinConstants k;
  explicit SteinPsi(double alpha);
  SteinPsi(double alpha, SteinConstants constants);
};

/// prod_i (min(s_i, t_i) - s_i t_i) on [0,1]^d.
struct WienerPillow {
  std::size_t d;
  explicit WienerPillow(std::size_t d);
};

/// prod_i min(s_i, t_i) - prod_i s_i t_i on [0,1]^d.
struct WienerBridge {
  std::size_t d;
  explicit WienerBridge(std::size_t d);
};

using CovarianceModel =
    std::variant<TorusExp, Wavy, FgnCov1D, FgnCov2D, FbfCov, SteinPsi, WienerPillow, WienerBridge>;

bool is_stationary(const CovarianceModel& model) noexcept;

/// Scalar-lag covariance; only FgnCov1D accepts it.
double eval_cov(const CovarianceModel& model, double lag);

/// Lag-vector covariance for stationary 2D models. TorusExp interprets the lag
/// as a torus displacement. Nonstationary models reject this form.
double eval_cov(const CovarianceModel& model, const Vec2& lag);

/// Pair covariance Cov(X_s, X_t). Stationary models evaluate at s - t; the
/// pillow and bridge require s, t of their own dimension d.
double eval_cov(const CovarianceModel& model, std::span<const double> s,
                std::span<const double> t);

/// 0.5 * (|k+1|^a - 2|k|^a + |k-1|^a)
double fgn_autocov(double alpha, double k) noexcept;

/// Stein's psi evaluated at radius r >= 0.
double stein_psi_value(double r, const SteinConstants& k, double alpha) noexcept;

}  // namespace spatialgen
