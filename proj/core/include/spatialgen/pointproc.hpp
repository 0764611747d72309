#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "spatialgen/grid.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen {

/// Axis-aligned rectangle [lower, upper].
struct Window {
  Vec2 lower{0.0, 0.0};
  Vec2 upper{1.0, 1.0};

  void validate() const;
  double width() const noexcept { return upper[0] - lower[0]; }
  double height() const noexcept { return upper[1] - lower[1]; }
  double area() const noexcept { return width() * height(); }
  bool contains(const Vec2& p) const noexcept {
    return p[0] >= lower[0] && p[0] <= upper[0] && p[1] >= lower[1] && p[1] <= upper[1];
  }
  Window dilated(double margin) const noexcept {
    return {{lower[0] - margin, lower[1] - margin}, {upper[0] + margin, upper[1] + margin}};
  }
  Vec2 uniform_point(RngStream& stream) const noexcept {
    const double x = stream.uniform(lower[0], upper[0]);
    const double y = stream.uniform(lower[1], upper[1]);
    return {x, y};
  }

  friend bool operator==(const Window&, const Window&) = default;
};

struct PointPattern {
  std::vector<Vec2> points;
  Window window;
  std::vector<double> marks;     // empty or one per point
  std::vector<Vec2> centers;     // cluster centers, metadata only
  bool extends_beyond_window = false;

  std::size_t size() const noexcept { return points.size(); }
  bool has_marks() const noexcept { return !marks.empty(); }
};

struct Homogeneous {
  double lambda;
};

/// lambda(x) with a caller-promised upper bound on the window. The total mass
/// is integrated numerically unless given.
struct CallableIntensity {
  std::function<double(const Vec2&)> lambda;
  double lambda_max;
  std::optional<double> exact_mass;
};

/// Piecewise-constant intensity: the window is split into the field's
/// nx x ny cells, half-open [i/nx, (i+1)/nx), and cell (j, i) has intensity
/// transform(field(j, i)).
struct FieldDriven {
  Field field;
  std::function<double(double)> transform;
};

using IntensitySpec = std::variant<Homogeneous, CallableIntensity, FieldDriven>;

double intensity_at(const IntensitySpec& spec, const Window& window, const Vec2& x);
double intensity_bound(const IntensitySpec& spec, const Window& window);

/// mu(window). Callable intensities use a 256 x 256 midpoint rule.
double mean_measure(const IntensitySpec& spec, const Window& window);

/// Spot-checks the bound on a 64 x 64 probe grid; throws InvalidBound.
void check_intensity_bound(const IntensitySpec& spec, const Window& window);

/// N ~ Poi(mu(E)) points drawn iid from lambda / mu(E) by acceptance-rejection
/// under the bound.
PointPattern sample_poisson_inversion(const IntensitySpec& spec, const Window& window,
                                      RngStream& stream);

/// Homogeneous proposals at the bound, each kept with probability
/// lambda(x) / bound.
PointPattern sample_poisson_thinning(const IntensitySpec& spec, const Window& window,
                                     RngStream& stream);

using MarkSampler = std::function<double(RngStream&)>;

PointPattern sample_marked_poisson(const IntensitySpec& spec, const Window& window,
                                   const MarkSampler& marks, RngStream& stream);

struct HawkesParams {
  double center_intensity = 30.0;
  double alpha = 0.9;   // mean offspring per point
  double sigma = 0.02;  // offspring displacement scale
};

inline constexpr std::size_t kHawkesPointCap = 1'000'000;

/// Centers on the window, then each point spawns Poi(alpha) children shifted
/// by N(0, sigma^2 I) until extinction. All generations are returned, centers
/// first; each center's family uses its own split stream.
PointPattern sample_hawkes(const HawkesParams& params, const Window& window, RngStream& stream);

struct MaternBall {
  double r;
};
struct ThomasGauss {
  double sigma;
};
using ClusterKernel = std::variant<MaternBall, ThomasGauss>;

/// Dilation of the center window: r for Matern, 4 sigma for Thomas.
double cluster_margin(const ClusterKernel& kernel);

/// Centers ~ Poi(kappa) on the dilated window, Poi(alpha) offspring each.
/// Offspring may fall outside the window; centers are kept as metadata only.
PointPattern sample_neyman_scott(double kappa, double alpha, const ClusterKernel& kernel,
                                 const Window& window, RngStream& stream);

struct CoxResult {
  PointPattern pattern;
  IntensitySpec intensity;
};

using IntensitySampler = std::function<IntensitySpec(RngStream&)>;

/// Draws the intensity, then a Poisson pattern by thinning.
CoxResult sample_cox(const IntensitySampler& sampler, const Window& window, RngStream& stream);

using CenterMarkSampler = std::function<double(const Vec2&, RngStream&)>;
using OffspringKernel = std::function<Vec2(const Vec2&, RngStream&)>;

/// Centers from K, a mark gamma_j per center, Poi(gamma_j) offspring drawn
/// from the kernel around each center.
PointPattern sample_shot_noise_cox(const IntensitySpec& center_intensity,
                                   const CenterMarkSampler& mark_sampler,
                                   const OffspringKernel& kernel, const Window& window,
                                   RngStream& stream);

struct ShotNoiseGParams {
  double alpha = 1.0;
  double beta = 50.0;
  double lambda = 1.0;
  double sigma = 0.02;  // Gaussian offspring kernel
};

/// Center intensity beta * lambda^-alpha / alpha with Gamma(alpha, lambda) marks.
double shot_noise_g_center_intensity(const ShotNoiseGParams& params);

PointPattern sample_shot_noise_g(const ShotNoiseGParams& params, const Window& window,
                                 RngStream& stream);

}  // namespace spatialgen
