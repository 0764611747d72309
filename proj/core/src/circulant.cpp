#include "spatialgen/circulant.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "spatialgen/dense.hpp"
#include "spatialgen/errors.hpp"

namespace spatialgen {

namespace {

constexpr double kClipTolerance = 1e-15;

// lag index of position b in a circular array of period m
long wrapped_lag(std::size_t b, std::size_t m) {
  return 2 * b <= m ? static_cast<long>(b) : static_cast<long>(b) - static_cast<long>(m);
}

std::vector<Complex> complex_noise(std::size_t n, RngStream& stream) {
  std::vector<Complex> z(n);
  for (auto& v : z) {
    const auto [re, im] = stream.complex_std_normal();
    v = {re, im};
  }
  return z;
}

}  // namespace

TorusPlan plan_torus(std::size_t n, const std::function<double(double)>& rho_of_distance,
                     double clip_tolerance) {
  if (n == 0) throw InvalidParameter("plan_torus: n must be positive");
  if (!(clip_tolerance >= 0.0)) throw InvalidParameter("plan_torus: tolerance must be >= 0");
  const double h = 1.0 / static_cast<double>(n);
  std::vector<Complex> g(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = torus_distance({0.0, 0.0}, {static_cast<double>(i) * h,
                                                    static_cast<double>(j) * h});
      g[j * n + i] = rho_of_distance(d);
    }
  }
  fft2_inplace(g, n, n);

  TorusPlan plan{n, std::vector<double>(n * n), 0, 0.0};
  double max_gamma = 0.0;
  double min_gamma = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    plan.gamma[k] = g[k].real();
    max_gamma = std::max(max_gamma, plan.gamma[k]);
    min_gamma = std::min(min_gamma, plan.gamma[k]);
  }
  plan.min_gamma = min_gamma;
  if (min_gamma < -clip_tolerance * max_gamma) throw EmbeddingInfeasible(min_gamma);
  for (auto& v : plan.gamma) {
    if (v < 0.0) {
      v = 0.0;
      ++plan.clip_count;
    }
  }
  return plan;
}

TorusPlan plan_torus(std::size_t n, const TorusExp& model, double clip_tolerance) {
  return plan_torus(
      n, [model](double d) { return std::exp(-model.c * std::pow(d, model.alpha)); },
      clip_tolerance);
}

Field sample_torus(const TorusPlan& plan, RngStream& stream) {
  const std::size_t n = plan.n;
  auto z = complex_noise(n * n, stream);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] *= std::sqrt(plan.gamma[k]) * inv_n;
  fft2_inplace(z, n, n);
  const double h = 1.0 / static_cast<double>(n);
  Field out(Grid2D(n, n, h, h));
  auto values = out.values();
  for (std::size_t k = 0; k < z.size(); ++k) values[k] = z[k].real();
  return out;
}

EmbeddingPlan plan_embedding(const Grid2D& grid, const LagCovariance& rho, double padding) {
  if (!(padding >= 1.0) || !std::isfinite(padding)) {
    throw InvalidParameter("plan_embedding: padding must be >= 1");
  }
  const auto cols = static_cast<std::size_t>(std::ceil(padding * static_cast<double>(2 * grid.nx - 1)));
  const auto rows = static_cast<std::size_t>(std::ceil(padding * static_cast<double>(2 * grid.ny - 1)));
  return plan_embedding_sized(grid, rho, rows, cols);
}

EmbeddingPlan plan_embedding_sized(const Grid2D& grid, const LagCovariance& rho, std::size_t rows,
                                   std::size_t cols) {
  if (rows < grid.ny || cols < grid.nx) {
    throw InvalidParameter("plan_embedding: embedding smaller than the grid");
  }
  EmbeddingPlan plan;
  plan.grid = grid;
  plan.rows = rows;
  plan.cols = cols;
  const std::size_t total = plan.rows * plan.cols;

  plan.base.resize(total);
  std::vector<Complex> work(total);
  for (std::size_t r = 0; r < plan.rows; ++r) {
    const double hy = static_cast<double>(wrapped_lag(r, plan.rows)) * grid.dy;
    for (std::size_t c = 0; c < plan.cols; ++c) {
      const double hx = static_cast<double>(wrapped_lag(c, plan.cols)) * grid.dx;
      plan.base[r * plan.cols + c] = rho(hx, hy);
      work[r * plan.cols + c] = plan.base[r * plan.cols + c];
    }
  }
  fft2_inplace(work, plan.rows, plan.cols);

  const double scale = 1.0 / static_cast<double>(total);
  plan.eigenvalues.resize(total);
  plan.sqrt_eigenvalues.resize(total);
  plan.min_eigenvalue = 0.0;
  for (std::size_t k = 0; k < total; ++k) {
    double lam = work[k].real() * scale;
    plan.min_eigenvalue = k == 0 ? lam : std::min(plan.min_eigenvalue, lam);
    if (lam < -kClipTolerance) throw EmbeddingInfeasible(lam);
    if (lam < 0.0) {
      lam = 0.0;
      ++plan.clip_count;
    }
    plan.eigenvalues[k] = lam;
    plan.sqrt_eigenvalues[k] = std::sqrt(lam);
  }
  return plan;
}

EmbeddingPlan plan_embedding(const Grid2D& grid, const CovarianceModel& model, double padding) {
  if (!is_stationary(model)) {
    throw InvalidParameter("plan_embedding: covariance model must be stationary");
  }
  return plan_embedding(
      grid, [&model](double hx, double hy) { return eval_cov(model, Vec2{hx, hy}); }, padding);
}

EmbeddingPlan plan_embedding_auto(const Grid2D& grid, const LagCovariance& rho) {
  constexpr double kPaddings[] = {1.0, 1.25, 1.5, 2.0, 3.0, 4.0};
  for (std::size_t k = 0;; ++k) {
    try {
      return plan_embedding(grid, rho, kPaddings[k]);
    } catch (const EmbeddingInfeasible&) {
      if (k + 1 == std::size(kPaddings)) throw;
    }
  }
}

FieldPair apply_embedding(const EmbeddingPlan& plan, std::span<const Complex> noise) {
  const std::size_t total = plan.rows * plan.cols;
  if (noise.size() != total) throw InvalidParameter("apply_embedding: noise size mismatch");
  std::vector<Complex> f(total);
  for (std::size_t k = 0; k < total; ++k) f[k] = plan.sqrt_eigenvalues[k] * noise[k];
  fft2_inplace(f, plan.rows, plan.cols);

  FieldPair out{Field(plan.grid), Field(plan.grid)};
  for (std::size_t j = 0; j < plan.grid.ny; ++j) {
    for (std::size_t i = 0; i < plan.grid.nx; ++i) {
      const Complex v = f[j * plan.cols + i];
      out.first(j, i) = v.real();
      out.second(j, i) = v.imag();
    }
  }
  return out;
}

FieldPair sample_embedded(const EmbeddingPlan& plan, RngStream& stream) {
  const auto z = complex_noise(plan.rows * plan.cols, stream);
  return apply_embedding(plan, z);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InsufficientData("loglog_slope: need at least two (x, y) pairs");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {

template <class F>
double time_repeated(F&& body, double min_seconds) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  std::size_t reps = 0;
  double elapsed = 0.0;
  do {
    body();
    ++reps;
    elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  } while (elapsed < min_seconds);
  return elapsed / static_cast<double>(reps);
}

}  // namespace

ScalingReport benchmark_scaling(const std::vector<std::size_t>& sizes,
                                const ScalingOptions& options) {
  ScalingReport report;
  auto rho = [](double hx, double hy) { return std::exp(-8.0 * std::hypot(hx, hy)); };
  RngStream stream(options.seed);
  double sink = 0.0;

  for (std::size_t n : sizes) {
    if (n == 0) throw InvalidParameter("benchmark_scaling: sizes must be positive");
    const double h = 1.0 / static_cast<double>(n);
    const Grid2D grid(n, n, h, h);
    ScalingRow row{n, n * n, 0.0, -1.0};

    row.circulant_seconds = time_repeated(
        [&] {
          const auto plan = plan_embedding(grid, rho);
          sink += sample_embedded(plan, stream).first(0, 0);
        },
        options.min_seconds);

    if (row.total_points <= options.dense_max_points) {
      const Matrix omega = build_grid_covariance(grid, rho);
      MvnSpec spec{Vector::Zero(static_cast<Eigen::Index>(row.total_points)), omega,
                   MatrixKind::Covariance};
      row.dense_seconds = time_repeated(
          [&] {
            const DenseGaussianSampler sampler(spec);
            sink += sampler.sample(stream)[0];
          },
          options.min_seconds);
    }
    report.rows.push_back(row);
  }

  std::vector<double> n_c, t_c, n_d, t_d;
  for (const auto& row : report.rows) {
    n_c.push_back(static_cast<double>(row.total_points));
    t_c.push_back(row.circulant_seconds);
    if (row.dense_seconds > 0.0) {
      n_d.push_back(static_cast<double>(row.total_points));
      t_d.push_back(row.dense_seconds);
    }
  }
  if (n_c.size() >= 2) {
    report.circulant_slope_total = loglog_slope(n_c, t_c);
    report.circulant_slope_axis = 2.0 * report.circulant_slope_total;
  }
  if (n_d.size() >= 2) {
    report.dense_slope_total = loglog_slope(n_d, t_d);
    report.dense_slope_axis = 2.0 * report.dense_slope_total;
  }
  if (std::isnan(sink)) report.rows.clear();
  return report;
}

}  // namespace spatialgen
