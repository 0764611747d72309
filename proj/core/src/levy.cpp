#include "spatialgen/levy.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "spatialgen/errors.hpp"

namespace spatialgen {

namespace {

constexpr double kRelTol = 1e-10;
constexpr double kMaxLogX = 700.0;
constexpr double kMinLogX = -700.0;

// int_{log a}^{log b} g(e^u) e^u du on unit panels
template <class G>
double log_panel_integral(G&& g, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double u) {
    const double x = std::exp(u);
    return g(x) * x;
  };
  const double lo = std::log(a);
  const bool open_top = std::isinf(b);
  const double hi = open_top ? kMaxLogX : std::log(b);
  double total = 0.0;
  for (double u = lo; u < hi;) {
    const double next = std::min(u + 1.0, hi);
    const double part = gauss_kronrod<double, 31>::integrate(f, u, next, 12, kRelTol * 1e-2);
    total += part;
    u = next;
    if (open_top && std::fabs(part) <= 1e-17 * std::fabs(total) && std::exp(u) > 1.0) {
      return total;
    }
  }
  if (open_top) throw InvalidMeasure("Levy measure tail does not converge");
  return total;
}

void require_band(double a, double b, const char* who) {
  if (!(a > 0.0) || !(b > a)) {
    throw InvalidMeasure(std::string(who) + ": band must satisfy 0 < a < b");
  }
}

double low_piece(double a, double b, RngStream& stream) {
  const double ratio = b / a;
  while (true) {
    const double x = a * std::pow(ratio, stream.uniform_open());
    if (stream.uniform() < std::exp(-(x - a))) return std::min(std::max(x, std::nextafter(a, b)), b);
  }
}

double high_piece(double a, double b, RngStream& stream) {
  const double span = std::isinf(b) ? 1.0 : -std::expm1(-(b - a));
  while (true) {
    const double x = a - std::log1p(-stream.uniform() * span);
    if (x <= a || x > b) continue;
    if (stream.uniform() * x < a) return x;
  }
}

}  // namespace

double band_mass(const LevyMeasure1D& nu, double a, double b) {
  require_band(a, b, "band_mass");
  return log_panel_integral(nu.density, a, b);
}

double tail_mass(const LevyMeasure1D& nu, double eps) {
  return band_mass(nu, eps, std::numeric_limits<double>::infinity());
}

double partial_mean(const LevyMeasure1D& nu, double a, double b) {
  if (a == b) return 0.0;
  require_band(a, b, "partial_mean");
  return log_panel_integral([&](double x) { return x * nu.density(x); }, a, b);
}

double partial_second_moment(const LevyMeasure1D& nu, double a, double b) {
  if (a == b) return 0.0;
  require_band(a, b, "partial_second_moment");
  return log_panel_integral([&](double x) { return x * x * nu.density(x); }, a, b);
}

void check_integrability(const LevyMeasure1D& nu) {
  using boost::math::quadrature::gauss_kronrod;
  const double big = tail_mass(nu, 1.0);
  auto f = [&](double u) {
    const double x = std::exp(u);
    return x * x * nu.density(x) * x;
  };
  double small = 0.0;
  for (double u = 0.0; u > kMinLogX; u -= 1.0) {
    const double part = gauss_kronrod<double, 31>::integrate(f, u - 1.0, u, 12, kRelTol * 1e-2);
    small += part;
    if (!std::isfinite(small)) break;
    if (std::fabs(part) <= 1e-17 * std::fabs(small) || small == 0.0) {
      if (!std::isfinite(big)) break;
      return;
    }
  }
  throw InvalidMeasure("Levy measure violates int min(1, x^2) nu(dx) < inf");
}

LevyMeasure1D gamma_levy_measure(double alpha) {
  if (!(alpha > 0.0)) throw InvalidParameter("gamma Levy measure: alpha must be positive");
  return {
      [alpha](double x) { return alpha * std::exp(-x) / x; },
      [alpha](double a, double b, RngStream& s) { return gamma_jump_sampler(alpha, a, b, s); },
  };
}

double gamma_jump_sampler(double alpha, double a, double b, RngStream& stream) {
  if (!(alpha > 0.0)) throw InvalidMeasure("gamma jump sampler: alpha must be positive");
  require_band(a, b, "gamma jump sampler");
  if (b <= 1.0) return low_piece(a, b, stream);
  if (a >= 1.0) return high_piece(a, b, stream);
  const LevyMeasure1D nu = gamma_levy_measure(alpha);
  const double low = band_mass(nu, a, 1.0);
  const double high = band_mass(nu, 1.0, b);
  if (stream.uniform() * (low + high) < low) return low_piece(a, 1.0, stream);
  return high_piece(1.0, b, stream);
}

double sample_compound_poisson(double rate, const std::function<double(RngStream&)>& jump,
                               double t, RngStream& stream) {
  if (!(rate >= 0.0) || !(t >= 0.0)) {
    throw InvalidParameter("compound Poisson: rate and t must be nonnegative");
  }
  const std::uint64_t n = stream.poisson(rate * t);
  double sum = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) sum += jump(stream);
  return sum;
}

namespace {

void require_times(std::span<const double> times) {
  if (times.empty()) throw InvalidParameter("Levy path: times must be nonempty");
  if (!(times[0] >= 0.0)) throw InvalidParameter("Levy path: times must be nonnegative");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw InvalidParameter("Levy path: times must be strictly increasing");
    }
  }
}

struct JumpBand {
  double lo;
  double hi;
  double rate;
};

// Adds compound Poisson jumps from `band` over each interval of `times`.
void add_jumps(std::vector<double>& values, std::span<const double> times, const JumpBand& band,
               const LevyMeasure1D& nu, RngStream& stream) {
  double prev = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const std::uint64_t count = stream.poisson(band.rate * (times[k] - prev));
    for (std::uint64_t j = 0; j < count; ++j) acc += nu.sample_band(band.lo, band.hi, stream);
    prev = times[k];
    values[k] += acc;
  }
}

}  // namespace

LevyPath sample_levy_path(const LevyPathSpec& spec, std::span<const double> times,
                          RngStream& stream) {
  require_times(times);
  if (!(spec.sigma >= 0.0)) throw InvalidParameter("Levy path: sigma must be nonnegative");
  if (!(spec.epsilon > 0.0)) throw InvalidParameter("Levy path: epsilon must be positive");
  const LevyMeasure1D& nu = spec.measure;
  check_integrability(nu);
  const double eps = std::min(spec.epsilon, 1.0);

  LevyPath path{{times.begin(), times.end()}, std::vector<double>(times.size(), 0.0),
                spec.epsilon};
  const double compensator = partial_mean(nu, eps, 1.0);
  double prev = 0.0;
  double w = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (spec.sigma > 0.0) w += std::sqrt(times[k] - prev) * stream.std_normal();
    prev = times[k];
    path.values[k] = (spec.mu - compensator) * times[k] + spec.sigma * w;
  }
  add_jumps(path.values, times, {1.0, std::numeric_limits<double>::infinity(), tail_mass(nu, 1.0)},
            nu, stream);
  if (eps < 1.0) add_jumps(path.values, times, {eps, 1.0, band_mass(nu, eps, 1.0)}, nu, stream);
  return path;
}

LevyPath refine_path(const LevyPath& path, const LevyPathSpec& spec, double epsilon_new,
                     RngStream& stream) {
  if (!(epsilon_new > 0.0) || !(epsilon_new < path.epsilon)) {
    throw InvalidParameter("refine_path: need 0 < epsilon_new < current epsilon");
  }
  require_times(path.times);
  LevyPath out = path;
  out.epsilon = epsilon_new;
  const double hi = std::min(path.epsilon, 1.0);
  if (epsilon_new >= hi) return out;
  const LevyMeasure1D& nu = spec.measure;
  const double compensator = partial_mean(nu, epsilon_new, hi);
  for (std::size_t k = 0; k < out.times.size(); ++k) out.values[k] -= compensator * out.times[k];
  add_jumps(out.values, out.times, {epsilon_new, hi, band_mass(nu, epsilon_new, hi)}, nu, stream);
  return out;
}

LevyPathSpec gamma_process_spec(double alpha, double epsilon) {
  return {alpha * (1.0 - std::exp(-1.0)), 0.0, gamma_levy_measure(alpha), epsilon};
}

SheetKernel bump_kernel(double r) {
  if (!(r > 0.0)) throw InvalidParameter("bump kernel: r must be positive");
  return [r](const Vec2& t, const Vec2& x) {
    const double dx = x[0] - t[0];
    const double dy = x[1] - t[1];
    const double d2 = dx * dx + dy * dy;
    return d2 <= r * r ? r * r - d2 : 0.0;
  };
}

LevySheetSpec gamma_sheet_spec(std::size_t n, double r, double alpha, double beta) {
  return {n, bump_kernel(r), {alpha, beta}, r};
}

Field draw_gamma_cells(const LevySheetSpec& spec, RngStream& stream) {
  if (spec.n == 0) throw InvalidParameter("Levy sheet: n must be positive");
  const double cell_area = 1.0 / static_cast<double>(spec.n * spec.n);
  const double shape = spec.cells.alpha * cell_area;
  const double h = 1.0 / static_cast<double>(spec.n);
  Field cells(Grid2D(spec.n, spec.n, h, h));
  for (auto& v : cells.values()) v = stream.gamma(shape, spec.cells.beta);
  return cells;
}

namespace {

template <class F>
double sum_over_support(const LevySheetSpec& spec, const Vec2& t, F&& weight) {
  const auto n = static_cast<double>(spec.n);
  long i0 = 0, i1 = static_cast<long>(spec.n) - 1, j0 = 0, j1 = i1;
  if (std::isfinite(spec.support_radius)) {
    const double r = spec.support_radius;
    i0 = std::max(i0, static_cast<long>(std::floor((t[0] - r) * n)));
    i1 = std::min(i1, static_cast<long>(std::ceil((t[0] + r) * n)));
    j0 = std::max(j0, static_cast<long>(std::floor((t[1] - r) * n)));
    j1 = std::min(j1, static_cast<long>(std::ceil((t[1] + r) * n)));
  }
  double sum = 0.0;
  for (long j = j0; j <= j1; ++j) {
    for (long i = i0; i <= i1; ++i) {
      const double k = spec.kernel(t, {static_cast<double>(i) / n, static_cast<double>(j) / n});
      if (k != 0.0) sum += k * weight(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
    }
  }
  return sum;
}

}  // namespace

double evaluate_levy_sheet(const LevySheetSpec& spec, const Field& cells, const Vec2& t) {
  if (cells.nx() != spec.n || cells.ny() != spec.n) {
    throw InvalidParameter("Levy sheet: cell field does not match n");
  }
  return sum_over_support(spec, t, [&](std::size_t j, std::size_t i) { return cells(j, i); });
}

double expected_levy_sheet(const LevySheetSpec& spec, const Vec2& t) {
  const double mean = spec.cells.alpha / (spec.cells.beta * static_cast<double>(spec.n * spec.n));
  return sum_over_support(spec, t, [&](std::size_t, std::size_t) { return mean; });
}

Field sample_gamma_sheet(const LevySheetSpec& spec, std::size_t m, RngStream& stream) {
  if (m == 0) throw InvalidParameter("Levy sheet: m must be positive");
  const Field cells = draw_gamma_cells(spec, stream);
  const double h = 1.0 / static_cast<double>(m);
  Field out(Grid2D(m, m, h, h));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      out(j, i) = evaluate_levy_sheet(spec, cells, {static_cast<double>(i) * h,
                                                    static_cast<double>(j) * h});
    }
  }
  return out;
}

}  // namespace spatialgen
