#include "spatialgen/pointproc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "spatialgen/errors.hpp"

namespace spatialgen {

namespace {

// fresh parent for per-cluster child streams
RngStream fork(RngStream& stream) { return RngStream(stream.next_u64(), stream.stream_id()); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::size_t kQuadratureSide = 256;
constexpr std::size_t kProbeSide = 64;

double field_cell_value(const FieldDriven& f, const Window& w, const Vec2& x) {
  const std::size_t nx = f.field.nx();
  const std::size_t ny = f.field.ny();
  auto cell = [](double u, std::size_t n) {
    const double scaled = std::floor(u * static_cast<double>(n));
    if (scaled < 0.0) return std::size_t{0};
    return std::min(static_cast<std::size_t>(scaled), n - 1);
  };
  const std::size_t i = cell((x[0] - w.lower[0]) / w.width(), nx);
  const std::size_t j = cell((x[1] - w.lower[1]) / w.height(), ny);
  return f.transform(f.field(j, i));
}

void require_nonnegative(double v, const char* who) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw InvalidParameter(std::string(who) + ": value must be finite and nonnegative");
  }
}

// Draws one point from lambda / mu(E) by rejection under the bound.
Vec2 draw_from_intensity(const IntensitySpec& spec, const Window& w, double bound,
                         RngStream& stream) {
  while (true) {
    const Vec2 x = w.uniform_point(stream);
    const double lam = intensity_at(spec, w, x);
    if (lam > bound) {
      throw InvalidBound("intensity " + std::to_string(lam) + " exceeds the bound " +
                         std::to_string(bound));
    }
    if (stream.uniform() * bound < lam) return x;
  }
}

std::vector<Vec2> cluster_offspring(const ClusterKernel& kernel, const Vec2& c,
                                    std::uint64_t count, RngStream& stream) {
  std::vector<Vec2> out;
  out.reserve(count);
  std::visit(Overloaded{
                 [&](const MaternBall& k) {
                   while (out.size() < count) {
                     const double u = stream.uniform(-k.r, k.r);
                     const double v = stream.uniform(-k.r, k.r);
                     if (std::hypot(u, v) < k.r) out.push_back({c[0] + u, c[1] + v});
                   }
                 },
                 [&](const ThomasGauss& k) {
                   while (out.size() < count) {
                     const double u = k.sigma * stream.std_normal();
                     const double v = k.sigma * stream.std_normal();
                     out.push_back({c[0] + u, c[1] + v});
                   }
                 },
             },
             kernel);
  return out;
}

void mark_outside(PointPattern& pattern) {
  pattern.extends_beyond_window =
      std::any_of(pattern.points.begin(), pattern.points.end(),
                  [&](const Vec2& p) { return !pattern.window.contains(p); });
}

}  // namespace

void Window::validate() const {
  if (!(lower[0] < upper[0]) || !(lower[1] < upper[1])) {
    throw InvalidParameter("Window: lower must be below upper on both axes");
  }
}

double intensity_at(const IntensitySpec& spec, const Window& window, const Vec2& x) {
  return std::visit(Overloaded{
                        [](const Homogeneous& h) { return h.lambda; },
                        [&](const CallableIntensity& c) { return c.lambda(x); },
                        [&](const FieldDriven& f) { return field_cell_value(f, window, x); },
                    },
                    spec);
}

double intensity_bound(const IntensitySpec& spec, const Window&) {
  return std::visit(Overloaded{
                        [](const Homogeneous& h) { return h.lambda; },
                        [](const CallableIntensity& c) { return c.lambda_max; },
                        [](const FieldDriven& f) {
                          double best = 0.0;
                          for (double v : f.field.values()) best = std::max(best, f.transform(v));
                          return best;
                        },
                    },
                    spec);
}

double mean_measure(const IntensitySpec& spec, const Window& window) {
  window.validate();
  return std::visit(
      Overloaded{
          [&](const Homogeneous& h) {
            require_nonnegative(h.lambda, "Homogeneous intensity");
            return h.lambda * window.area();
          },
          [&](const CallableIntensity& c) {
            if (c.exact_mass) return *c.exact_mass;
            const double hx = window.width() / kQuadratureSide;
            const double hy = window.height() / kQuadratureSide;
            double sum = 0.0;
            for (std::size_t j = 0; j < kQuadratureSide; ++j) {
              for (std::size_t i = 0; i < kQuadratureSide; ++i) {
                sum += c.lambda({window.lower[0] + (static_cast<double>(i) + 0.5) * hx,
                                 window.lower[1] + (static_cast<double>(j) + 0.5) * hy});
              }
            }
            return sum * hx * hy;
          },
          [&](const FieldDriven& f) {
            double sum = 0.0;
            for (double v : f.field.values()) sum += f.transform(v);
            return sum * window.area() / static_cast<double>(f.field.size());
          },
      },
      spec);
}

void check_intensity_bound(const IntensitySpec& spec, const Window& window) {
  const double bound = intensity_bound(spec, window);
  require_nonnegative(bound, "intensity bound");
  if (!std::holds_alternative<CallableIntensity>(spec)) return;
  for (std::size_t j = 0; j < kProbeSide; ++j) {
    for (std::size_t i = 0; i < kProbeSide; ++i) {
      const Vec2 x{window.lower[0] + window.width() * static_cast<double>(i) / (kProbeSide - 1),
                   window.lower[1] + window.height() * static_cast<double>(j) / (kProbeSide - 1)};
      const double lam = intensity_at(spec, window, x);
      if (lam < 0.0) throw InvalidParameter("intensity is negative at a probe point");
      if (lam > bound) {
        throw InvalidBound("intensity " + std::to_string(lam) + " at (" + std::to_string(x[0]) +
                           ", " + std::to_string(x[1]) + ") exceeds the bound " +
                           std::to_string(bound));
      }
    }
  }
}

PointPattern sample_poisson_inversion(const IntensitySpec& spec, const Window& window,
                                      RngStream& stream) {
  check_intensity_bound(spec, window);
  PointPattern out;
  out.window = window;
  const double mass = mean_measure(spec, window);
  const double bound = intensity_bound(spec, window);
  if (mass <= 0.0 || bound <= 0.0) return out;
  const std::uint64_t n = stream.poisson(mass);
  out.points.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    out.points.push_back(draw_from_intensity(spec, window, bound, stream));
  }
  return out;
}

PointPattern sample_poisson_thinning(const IntensitySpec& spec, const Window& window,
                                     RngStream& stream) {
  check_intensity_bound(spec, window);
  window.validate();
  PointPattern out;
  out.window = window;
  const double bound = intensity_bound(spec, window);
  if (bound <= 0.0) return out;
  const std::uint64_t n = stream.poisson(bound * window.area());
  for (std::uint64_t k = 0; k < n; ++k) {
    const Vec2 x = window.uniform_point(stream);
    const double lam = intensity_at(spec, window, x);
    if (lam > bound) {
      throw InvalidBound("intensity " + std::to_string(lam) + " exceeds the bound " +
                         std::to_string(bound));
    }
    if (stream.uniform() * bound < lam) out.points.push_back(x);
  }
  return out;
}

PointPattern sample_marked_poisson(const IntensitySpec& spec, const Window& window,
                                   const MarkSampler& marks, RngStream& stream) {
  PointPattern out = sample_poisson_inversion(spec, window, stream);
  out.marks.reserve(out.points.size());
  for (std::size_t k = 0; k < out.points.size(); ++k) out.marks.push_back(marks(stream));
  return out;
}

PointPattern sample_hawkes(const HawkesParams& params, const Window& window, RngStream& stream) {
  window.validate();
  require_nonnegative(params.center_intensity, "Hawkes center intensity");
  require_nonnegative(params.alpha, "Hawkes alpha");
  if (params.alpha >= 1.0) {
    throw Supercritical("Hawkes process needs alpha < 1 (mean offspring per point), got " +
                        std::to_string(params.alpha));
  }
  if (!(params.sigma > 0.0)) throw InvalidParameter("Hawkes sigma must be positive");

  PointPattern out;
  out.window = window;
  const std::uint64_t n_centers = stream.poisson(params.center_intensity * window.area());
  for (std::uint64_t k = 0; k < n_centers; ++k) out.centers.push_back(window.uniform_point(stream));
  out.points = out.centers;

  std::deque<Vec2> queue;
  const RngStream families = fork(stream);
  for (std::size_t c = 0; c < out.centers.size(); ++c) {
    RngStream family = families.split(c);
    queue.assign(1, out.centers[c]);
    while (!queue.empty()) {
      const Vec2 parent = queue.front();
      queue.pop_front();
      const std::uint64_t kids = family.poisson(params.alpha);
      for (std::uint64_t k = 0; k < kids; ++k) {
        const Vec2 child{parent[0] + params.sigma * family.std_normal(),
                         parent[1] + params.sigma * family.std_normal()};
        if (out.points.size() >= kHawkesPointCap) {
          throw CapacityExceeded("Hawkes process exceeded " + std::to_string(kHawkesPointCap) +
                                 " points");
        }
        out.points.push_back(child);
        queue.push_back(child);
      }
    }
  }
  mark_outside(out);
  return out;
}

double cluster_margin(const ClusterKernel& kernel) {
  return std::visit(Overloaded{
                        [](const MaternBall& k) {
                          if (!(k.r > 0.0)) throw InvalidParameter("Matern radius must be positive");
                          return k.r;
                        },
                        [](const ThomasGauss& k) {
                          if (!(k.sigma > 0.0)) {
                            throw InvalidParameter("Thomas sigma must be positive");
                          }
                          return 4.0 * k.sigma;
                        },
                    },
                    kernel);
}

PointPattern sample_neyman_scott(double kappa, double alpha, const ClusterKernel& kernel,
                                 const Window& window, RngStream& stream) {
  window.validate();
  require_nonnegative(kappa, "Neyman-Scott kappa");
  require_nonnegative(alpha, "Neyman-Scott alpha");
  const Window centers_window = window.dilated(cluster_margin(kernel));

  PointPattern out;
  out.window = window;
  const std::uint64_t n_centers = stream.poisson(kappa * centers_window.area());
  for (std::uint64_t k = 0; k < n_centers; ++k) {
    out.centers.push_back(centers_window.uniform_point(stream));
  }
  const RngStream families = fork(stream);
  for (std::size_t c = 0; c < out.centers.size(); ++c) {
    RngStream cluster = families.split(c);
    const std::uint64_t count = cluster.poisson(alpha);
    const auto kids = cluster_offspring(kernel, out.centers[c], count, cluster);
    out.points.insert(out.points.end(), kids.begin(), kids.end());
  }
  mark_outside(out);
  return out;
}

CoxResult sample_cox(const IntensitySampler& sampler, const Window& window, RngStream& stream) {
  IntensitySpec intensity = sampler(stream);
  PointPattern pattern = sample_poisson_thinning(intensity, window, stream);
  return {std::move(pattern), std::move(intensity)};
}

PointPattern sample_shot_noise_cox(const IntensitySpec& center_intensity,
                                   const CenterMarkSampler& mark_sampler,
                                   const OffspringKernel& kernel, const Window& window,
                                   RngStream& stream) {
  const PointPattern centers = sample_poisson_inversion(center_intensity, window, stream);
  PointPattern out;
  out.window = window;
  out.centers = centers.points;
  const RngStream families = fork(stream);
  for (std::size_t c = 0; c < out.centers.size(); ++c) {
    RngStream local = families.split(c);
    const double gamma = mark_sampler(out.centers[c], local);
    require_nonnegative(gamma, "shot-noise center mark");
    const std::uint64_t count = local.poisson(gamma);
    for (std::uint64_t k = 0; k < count; ++k) out.points.push_back(kernel(out.centers[c], local));
  }
  mark_outside(out);
  return out;
}

double shot_noise_g_center_intensity(const ShotNoiseGParams& p) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0) || !(p.lambda > 0.0)) {
    throw InvalidParameter("shot-noise G: alpha, beta and lambda must be positive");
  }
  return p.beta * std::pow(p.lambda, -p.alpha) / p.alpha;
}

PointPattern sample_shot_noise_g(const ShotNoiseGParams& params, const Window& window,
                                 RngStream& stream) {
  const double k = shot_noise_g_center_intensity(params);
  if (!(params.sigma > 0.0)) throw InvalidParameter("shot-noise G: sigma must be positive");
  return sample_shot_noise_cox(
      Homogeneous{k},
      [&](const Vec2&, RngStream& s) { return s.gamma(params.alpha, params.lambda); },
      [&](const Vec2& c, RngStream& s) {
        const double u = params.sigma * s.std_normal();
        const double v = params.sigma * s.std_normal();
        return Vec2{c[0] + u, c[1] + v};
      },
      window, stream);
}

}  // namespace spatialgen
