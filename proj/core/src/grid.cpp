#include "spatialgen/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spatialgen/errors.hpp"

namespace spatialgen {

Grid2D::Grid2D(std::size_t nx_, std::size_t ny_, double dx_, double dy_, double ox, double oy)
    : nx(nx_), ny(ny_), dx(dx_), dy(dy_), origin_x(ox), origin_y(oy) {
  if (nx == 0 || ny == 0) throw InvalidParameter("Grid2D: nx and ny must be positive");
  if (!(dx > 0.0) || !(dy > 0.0)) throw InvalidParameter("Grid2D: spacings must be positive");
}

Field::Field(Grid2D grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

Field::Field(Grid2D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidParameter("Field: expected " + std::to_string(grid_.size()) + " values, got " +
                           std::to_string(values_.size()));
  }
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double torus_distance(const Vec2& s, const Vec2& t) {
  double sum = 0.0;
  for (int k = 0; k < 2; ++k) {
    if (!(s[k] >= 0.0 && s[k] < 1.0) || !(t[k] >= 0.0 && t[k] < 1.0)) {
      throw InvalidParameter("torus_distance: coordinates must lie in [0, 1)");
    }
    const double d = std::fabs(s[k] - t[k]);
    const double w = std::min(d, 1.0 - d);
    sum += w * w;
  }
  return std::sqrt(sum);
}

namespace {

void require_alpha_open(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw InvalidParameter(std::string(who) + ": alpha must lie in (0, 2)");
  }
}

// torus wrap of one displacement component
double wrap_unit(double h) {
  double d = std::fabs(std::fmod(h, 1.0));
  return std::min(d, 1.0 - d);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

TorusExp::TorusExp(double c_, double alpha_) : c(c_), alpha(alpha_) {
  if (!(c > 0.0)) throw InvalidParameter("TorusExp: c must be positive");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidParameter("TorusExp: alpha must lie in (0, 2]");
}

FgnCov1D::FgnCov1D(double a) : alpha(a) { require_alpha_open(a, "FgnCov1D"); }
FgnCov2D::FgnCov2D(double a) : alpha(a) { require_alpha_open(a, "FgnCov2D"); }
FbfCov::FbfCov(double a) : alpha(a) { require_alpha_open(a, "FbfCov"); }

SteinConstants stein_constants(double alpha) {
  require_alpha_open(alpha, "stein_constants");
  if (alpha <= 1.5) {
    const double c2 = alpha / 2.0;
    return {1.0, 0.0, c2, 1.0 - c2};
  }
  const double R = 2.0;
  const double beta = alpha * (2.0 - alpha) / (3.0 * R * (R * R - 1.0));
  const double c2 = (alpha - beta * (R - 1.0) * (R - 1.0) * (R + 2.0)) / 2.0;
  const double c0 = beta * (R - 1.0) * (R - 1.0) * (R - 1.0) + 1.0 - c2;
  return {R, beta, c2, c0};
}

SteinPsi::SteinPsi(double a) : alpha(a), k(stein_constants(a)) {}

SteinPsi::SteinPsi(double a, SteinConstants constants) : alpha(a), k(constants) {
  const SteinConstants ref = stein_constants(a);
  auto close = [](double x, double y) { return std::fabs(x - y) <= 1e-12 * (1.0 + std::fabs(y)); };
  if (!close(k.R, ref.R) || !close(k.beta, ref.beta) || !close(k.c2, ref.c2) ||
      !close(k.c0, ref.c0)) {
    throw InvalidParameter("SteinPsi: constants do not match the table for this alpha");
  }
}

WienerPillow::WienerPillow(std::size_t d_) : d(d_) {
  if (d == 0) throw InvalidParameter("WienerPillow: dimension must be positive");
}
WienerBridge::WienerBridge(std::size_t d_) : d(d_) {
  if (d == 0) throw InvalidParameter("WienerBridge: dimension must be positive");
}

double fgn_autocov(double alpha, double k) noexcept {
  const double a = std::fabs(k);
  return 0.5 * (std::pow(std::fabs(a + 1.0), alpha) - 2.0 * std::pow(a, alpha) +
                std::pow(std::fabs(a - 1.0), alpha));
}

double stein_psi_value(double r, const SteinConstants& k, double alpha) noexcept {
  if (r <= 1.0) return k.c0 + k.c2 * r * r - std::pow(r, alpha);
  if (r <= k.R) return k.beta * std::pow(k.R - r, 3) / r;
  return 0.0;
}

bool is_stationary(const CovarianceModel& model) noexcept {
  return !std::holds_alternative<FbfCov>(model) && !std::holds_alternative<WienerPillow>(model) &&
         !std::holds_alternative<WienerBridge>(model);
}

double eval_cov(const CovarianceModel& model, double lag) {
  if (const auto* m = std::get_if<FgnCov1D>(&model)) return fgn_autocov(m->alpha, lag);
  throw InvalidParameter("eval_cov: scalar lag is only valid for FgnCov1D");
}

double eval_cov(const CovarianceModel& model, const Vec2& h) {
  return std::visit(
      Overloaded{
          [&](const TorusExp& m) {
            const double a = wrap_unit(h[0]);
            const double b = wrap_unit(h[1]);
            return std::exp(-m.c * std::pow(std::sqrt(a * a + b * b), m.alpha));
          },
          [&](const Wavy&) {
            const double ax = h[0] / Wavy::kRangeX;
            const double ay = h[1] / Wavy::kRangeY;
            return (1.0 - ax * ax - h[0] * h[1] / (Wavy::kRangeX * Wavy::kRangeY) - ay * ay) *
                   std::exp(-(ax * ax + ay * ay));
          },
          [&](const FgnCov2D& m) { return fgn_autocov(m.alpha, h[0]) * fgn_autocov(m.alpha, h[1]); },
          [&](const SteinPsi& m) {
            return stein_psi_value(std::hypot(h[0], h[1]), m.k, m.alpha);
          },
          [&](const FgnCov1D&) -> double {
            throw InvalidParameter("eval_cov: FgnCov1D takes a scalar lag");
          },
          [&](const auto&) -> double {
            throw InvalidParameter("eval_cov: nonstationary model needs a pair (s, t)");
          },
      },
      model);
}

double eval_cov(const CovarianceModel& model, std::span<const double> s,
                std::span<const double> t) {
  if (s.size() != t.size()) throw InvalidParameter("eval_cov: s and t differ in dimension");
  return std::visit(
      Overloaded{
          [&](const FbfCov& m) {
            if (s.size() != 2) throw InvalidParameter("eval_cov: FbfCov needs 2D points");
            const double ns = std::hypot(s[0], s[1]);
            const double nt = std::hypot(t[0], t[1]);
            const double nd = std::hypot(s[0] - t[0], s[1] - t[1]);
            return std::pow(ns, m.alpha) + std::pow(nt, m.alpha) - std::pow(nd, m.alpha);
          },
          [&](const WienerPillow& m) {
            if (s.size() != m.d) throw InvalidParameter("eval_cov: pillow dimension mismatch");
            double prod = 1.0;
            for (std::size_t i = 0; i < m.d; ++i) prod *= std::min(s[i], t[i]) - s[i] * t[i];
            return prod;
          },
          [&](const WienerBridge& m) {
            if (s.size() != m.d) throw InvalidParameter("eval_cov: bridge dimension mismatch");
            double pmin = 1.0;
            double pprod = 1.0;
            for (std::size_t i = 0; i < m.d; ++i) {
              pmin *= std::min(s[i], t[i]);
              pprod *= s[i] * t[i];
            }
            return pmin - pprod;
          },
          [&](const FgnCov1D& m) {
            if (s.size() != 1) throw InvalidParameter("eval_cov: FgnCov1D needs 1D points");
            return fgn_autocov(m.alpha, s[0] - t[0]);
          },
          [&](const auto&) {
            if (s.size() != 2) throw InvalidParameter("eval_cov: model needs 2D points");
            return eval_cov(model, Vec2{s[0] - t[0], s[1] - t[1]});
          },
      },
      model);
}

}  // namespace spatialgen
