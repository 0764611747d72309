#include "spatialgen/fractional.hpp"

#include <cmath>
#include <string>

#include "spatialgen/errors.hpp"

namespace spatialgen {

namespace {

void require_hurst(double h) {
  if (!(h > 0.0 && h < 1.0)) throw InvalidParameter("Hurst parameter must lie in (0, 1)");
}

void require_increasing(std::span<const double> times) {
  if (times.empty()) throw InvalidParameter("times must be nonempty");
  if (!(times[0] >= 0.0)) throw InvalidParameter("times must start at or after 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InvalidParameter("times must be strictly increasing");
  }
}

}  // namespace

std::vector<double> sample_wiener_path(std::span<const double> times, RngStream& stream) {
  require_increasing(times);
  std::vector<double> w(times.size());
  double prev_t = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    acc += std::sqrt(times[k] - prev_t) * stream.std_normal();
    prev_t = times[k];
    w[k] = acc;
  }
  return w;
}

Matrix sample_brownian_motion_d(const Vector& mu, const Matrix& sigma_sqrt,
                                std::span<const double> times, RngStream& stream) {
  const Eigen::Index d = mu.size();
  if (d == 0 || sigma_sqrt.rows() != d || sigma_sqrt.cols() != d) {
    throw InvalidParameter("sample_brownian_motion_d: mu and sigma_sqrt dimensions differ");
  }
  require_increasing(times);
  const auto steps = static_cast<Eigen::Index>(times.size());
  Matrix w(steps, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const auto path = sample_wiener_path(times, stream);
    for (Eigen::Index k = 0; k < steps; ++k) w(k, c) = path[static_cast<std::size_t>(k)];
  }
  Matrix out = w * sigma_sqrt.transpose();
  for (Eigen::Index k = 0; k < steps; ++k) {
    out.row(k) += times[static_cast<std::size_t>(k)] * mu.transpose();
  }
  return out;
}

FbmPlan plan_fbm(std::size_t n, double hurst) {
  if (n == 0) throw InvalidParameter("plan_fbm: n must be positive");
  require_hurst(hurst);
  const double alpha = 2.0 * hurst;
  const std::size_t len = 2 * n;
  std::vector<Complex> r(len);
  for (std::size_t k = 0; k <= n; ++k) r[k] = fgn_autocov(alpha, static_cast<double>(k));
  for (std::size_t k = 1; k < n; ++k) r[len - k] = r[k];
  fft_inplace(r);

  FbmPlan plan;
  plan.n = n;
  plan.hurst = hurst;
  plan.eigenvalues.resize(len);
  plan.sqrt_eigenvalues.resize(len);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t k = 0; k < len; ++k) {
    double lam = r[k].real() * scale;
    plan.min_eigenvalue = k == 0 ? lam : std::min(plan.min_eigenvalue, lam);
    if (lam < -1e-15) throw EmbeddingInfeasible(lam);
    if (lam < 0.0) {
      lam = 0.0;
      ++plan.clip_count;
    }
    plan.eigenvalues[k] = lam;
    plan.sqrt_eigenvalues[k] = std::sqrt(lam);
  }
  return plan;
}

FbmPair apply_fbm(const FbmPlan& plan, std::span<const Complex> noise) {
  const std::size_t n = plan.n;
  if (noise.size() != 2 * n) throw InvalidParameter("apply_fbm: noise must have 2n entries");
  std::vector<Complex> w(2 * n);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = plan.sqrt_eigenvalues[k] * noise[k];
  fft_inplace(w);
  const double scale = std::pow(static_cast<double>(n), -plan.hurst);
  FbmPair out{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0)};
  double a = 0.0, b = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    a += w[k].real();
    b += w[k].imag();
    out.first[k + 1] = scale * a;
    out.second[k + 1] = scale * b;
  }
  return out;
}

FbmPair sample_fbm_pair(const FbmPlan& plan, RngStream& stream) {
  std::vector<Complex> z(2 * plan.n);
  for (auto& v : z) {
    const auto [re, im] = stream.complex_std_normal();
    v = {re, im};
  }
  return apply_fbm(plan, z);
}

std::vector<double> sample_fbm(std::size_t n, double hurst, RngStream& stream) {
  return sample_fbm_pair(plan_fbm(n, hurst), stream).first;
}

SheetPlan plan_sheet(std::size_t n, double hurst) {
  if (n == 0) throw InvalidParameter("plan_sheet: n must be positive");
  require_hurst(hurst);
  const double alpha = 2.0 * hurst;
  SheetPlan plan;
  plan.n = n;
  plan.hurst = hurst;
  plan.embedding = plan_embedding_sized(
      Grid2D(n, n),
      [alpha](double hx, double hy) { return fgn_autocov(alpha, hx) * fgn_autocov(alpha, hy); },
      2 * n, 2 * n);
  return plan;
}

Field sheet_from_noise(const Field& fgn, double hurst) {
  const std::size_t n = fgn.nx();
  if (fgn.ny() != n) throw InvalidParameter("sheet_from_noise: noise must be square");
  const double h = 1.0 / static_cast<double>(n);
  const double scale = std::pow(static_cast<double>(n), -2.0 * hurst);
  Field out(Grid2D(n + 1, n + 1, h, h));
  for (std::size_t j = 1; j <= n; ++j) {
    double row = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      row += fgn(j - 1, i - 1);
      out(j, i) = out(j - 1, i) + scale * row;
    }
  }
  return out;
}

FieldPair sample_sheet_pair(const SheetPlan& plan, RngStream& stream) {
  const FieldPair noise = sample_embedded(plan.embedding, stream);
  return {sheet_from_noise(noise.first, plan.hurst), sheet_from_noise(noise.second, plan.hurst)};
}

Field sample_fractional_wiener_sheet(std::size_t n, double hurst, RngStream& stream) {
  return sample_sheet_pair(plan_sheet(n, hurst), stream).first;
}

double stein_psi(double h_norm, const SteinConstants& constants, double alpha) {
  if (!(h_norm >= 0.0)) throw InvalidParameter("stein_psi: |h| must be nonnegative");
  return stein_psi_value(h_norm, constants, alpha);
}

FbfPlan plan_fbf(std::size_t m, std::size_t n, double hurst) {
  if (m < 2 || n < 2) throw InvalidParameter("plan_fbf: need at least 2 points per axis");
  require_hurst(hurst);
  FbfPlan plan;
  plan.m = m;
  plan.n = n;
  plan.hurst = hurst;
  const double alpha = 2.0 * hurst;
  plan.constants = stein_constants(alpha);
  const double R = plan.constants.R;
  const Grid2D grid(n, m, R / static_cast<double>(n - 1), R / static_cast<double>(m - 1));
  const SteinConstants k = plan.constants;
  plan.embedding = plan_embedding_sized(
      grid, [k, alpha](double hx, double hy) { return stein_psi_value(std::hypot(hx, hy), k, alpha); },
      2 * (m - 1), 2 * (n - 1));
  return plan;
}

namespace {

MaskedField adjust_fbf(const Field& raw, double c2, RngStream& stream) {
  const Grid2D& g = raw.grid();
  const double z1 = stream.std_normal();
  const double z2 = stream.std_normal();
  const double slope = std::sqrt(2.0 * c2);
  const double origin = raw(0, 0);
  MaskedField out{Field(g), std::vector<std::uint8_t>(g.size(), 0)};
  for (std::size_t j = 0; j < g.ny; ++j) {
    const double ty = g.y(j);
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double tx = g.x(i);
      if (tx * tx + ty * ty > 1.0 + 1e-12) continue;
      out.field(j, i) = raw(j, i) - origin + slope * (tx * z1 + ty * z2);
      out.mask[j * g.nx + i] = 1;
    }
  }
  return out;
}

}  // namespace

MaskedFieldPair sample_fbf_pair(const FbfPlan& plan, RngStream& stream) {
  const FieldPair raw = sample_embedded(plan.embedding, stream);
  MaskedField first = adjust_fbf(raw.first, plan.constants.c2, stream);
  MaskedField second = adjust_fbf(raw.second, plan.constants.c2, stream);
  return {std::move(first), std::move(second)};
}

MaskedFieldPair sample_fbf(std::size_t m, std::size_t n, double hurst, RngStream& stream) {
  return sample_fbf_pair(plan_fbf(m, n, hurst), stream);
}

double pillow_bridge_cov(const CovarianceModel& model, std::span<const double> s,
                         std::span<const double> t) {
  if (!std::holds_alternative<WienerPillow>(model) && !std::holds_alternative<WienerBridge>(model)) {
    throw InvalidParameter("pillow_bridge_cov: model must be a Wiener pillow or bridge");
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < 0.0 || s[k] > 1.0 || t[k] < 0.0 || t[k] > 1.0) {
      throw InvalidParameter("pillow_bridge_cov: coordinates must lie in [0, 1]");
    }
  }
  return eval_cov(model, s, t);
}

Field sample_pillow_or_bridge(const CovarianceModel& model, std::size_t k, RngStream& stream) {
  if (k == 0) throw InvalidParameter("sample_pillow_or_bridge: k must be positive");
  const double h = 1.0 / static_cast<double>(k + 1);
  const Grid2D grid(k, k, h, h, h, h);
  const auto n = static_cast<Eigen::Index>(grid.size());
  Matrix cov(n, n);
  for (std::size_t a = 0; a < grid.size(); ++a) {
    const double sa[2] = {grid.x(a % k), grid.y(a / k)};
    for (std::size_t b = 0; b < grid.size(); ++b) {
      const double sb[2] = {grid.x(b % k), grid.y(b / k)};
      cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          pillow_bridge_cov(model, sa, sb);
    }
  }
  const Vector x = sample_mvn_cov({Vector::Zero(n), cov, MatrixKind::Covariance}, stream);
  return Field(grid, std::vector<double>(x.data(), x.data() + x.size()));
}

}  // namespace spatialgen
