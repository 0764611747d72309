#include "spatialgen/validate.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdio>

#include "spatialgen/errors.hpp"

namespace spatialgen {

MomentReport make_report(std::string name, double estimate, double std_error, double target,
                         double threshold) {
  if (!(std_error > 0.0) || !std::isfinite(std_error)) {
    throw InsufficientData("moment report '" + name + "': standard error must be positive");
  }
  const double z = (estimate - target) / std_error;
  return {std::move(name), estimate, std_error, target, z, std::fabs(z) <= threshold, threshold};
}

MeanSe mean_and_se(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw InsufficientData("mean_and_se: need at least two values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

MeanSe variance_and_se(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 4) throw InsufficientData("variance_and_se: need at least four values");
  const auto nd = static_cast<double>(n);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= nd;
  double m2 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d2 = (v - mean) * (v - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= nd;
  m4 /= nd;
  const double var = m2 * nd / (nd - 1.0);
  return {var, std::sqrt(std::max(m4 - m2 * m2, 0.0) / nd)};
}

MeanSe batch_means(std::span<const double> values, std::size_t batches) {
  if (batches < 2) throw InvalidParameter("batch_means: need at least two batches");
  const std::size_t len = values.size() / batches;
  if (len == 0) throw InsufficientData("batch_means: fewer values than batches");
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t k = 0; k < len; ++k) means[b] += values[b * len + k];
    means[b] /= static_cast<double>(len);
  }
  return mean_and_se(means);
}

double two_sample_z(const MeanSe& a, const MeanSe& b) {
  const double se = std::sqrt(a.se * a.se + b.se * b.se);
  if (!(se > 0.0)) throw InsufficientData("two_sample_z: zero pooled standard error");
  return (a.mean - b.mean) / se;
}

MomentReport empirical_cov_at_lag(std::span<const Field> realizations, long di, long dj,
                                  double target, double threshold, bool subtract_mean) {
  if (realizations.size() < 100) {
    throw InsufficientData("empirical_cov_at_lag: need at least 100 realizations");
  }
  const Grid2D& g = realizations.front().grid();
  const long nx = static_cast<long>(g.nx);
  const long ny = static_cast<long>(g.ny);
  if (std::labs(di) >= nx || std::labs(dj) >= ny) {
    throw InvalidParameter("empirical_cov_at_lag: lag outside the grid");
  }
  const long i0 = std::max(0L, -di), i1 = std::min(nx, nx - di);
  const long j0 = std::max(0L, -dj), j1 = std::min(ny, ny - dj);

  std::vector<double> per(realizations.size());
  for (std::size_t k = 0; k < realizations.size(); ++k) {
    const Field& f = realizations[k];
    if (!(f.grid() == g)) throw InvalidParameter("empirical_cov_at_lag: grids differ");
    double mu = 0.0;
    if (subtract_mean) {
      for (double v : f.values()) mu += v;
      mu /= static_cast<double>(f.size());
    }
    double sum = 0.0;
    for (long j = j0; j < j1; ++j) {
      for (long i = i0; i < i1; ++i) {
        sum += (f(j, i) - mu) * (f(j + dj, i + di) - mu);
      }
    }
    per[k] = sum / static_cast<double>((i1 - i0) * (j1 - j0));
  }
  const MeanSe m = mean_and_se(per);
  return make_report("cov_at_lag(" + std::to_string(di) + "," + std::to_string(dj) + ")", m.mean,
                     m.se, target, threshold);
}

MomentReport dispersion_test(std::span<const std::uint64_t> counts, double threshold) {
  const std::size_t n = counts.size();
  if (n < 1000) throw InsufficientData("dispersion_test: need at least 1000 counts");
  const auto nd = static_cast<double>(n);
  double s1 = 0.0, s2 = 0.0;
  for (auto c : counts) {
    const auto x = static_cast<double>(c);
    s1 += x;
    s2 += x * x;
  }
  if (s1 == 0.0) throw InsufficientData("dispersion_test: all counts are zero");
  auto ratio = [](double sum, double sumsq, double m) {
    const double mean = sum / m;
    const double var = (sumsq - sum * mean) / (m - 1.0);
    return var / mean;
  };
  const double full = ratio(s1, s2, nd);
  double jsum = 0.0, jsq = 0.0;
  for (auto c : counts) {
    const auto x = static_cast<double>(c);
    const double r = ratio(s1 - x, s2 - x * x, nd - 1.0);
    jsum += r;
    jsq += r * r;
  }
  const double jmean = jsum / nd;
  const double jvar = (nd - 1.0) / nd * (jsq - nd * jmean * jmean);
  return make_report("dispersion", full, std::sqrt(std::max(jvar, 0.0)), 1.0, threshold);
}

MeanSe pair_probability_oracle(double r, std::uint64_t n_samples, RngStream& stream) {
  if (!(r > 0.0)) return {0.0, 0.0};
  if (r >= std::sqrt(2.0)) return {1.0, 0.0};
  if (n_samples < 2) throw InsufficientData("pair_probability_oracle: need at least two samples");
  const double r2 = r * r;
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < n_samples; ++k) {
    const double dx = stream.uniform() - stream.uniform();
    const double dy = stream.uniform() - stream.uniform();
    if (dx * dx + dy * dy < r2) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples))};
}

double chi_square_pvalue(double statistic, double dof) {
  if (!(dof > 0.0)) throw InvalidParameter("chi_square_pvalue: dof must be positive");
  if (!(statistic >= 0.0)) throw InvalidParameter("chi_square_pvalue: statistic must be >= 0");
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), statistic));
}

std::string to_text(const MomentReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, " estimate=%.6g se=%.3g target=%.6g z=%.3f (|z|<=%g)",
                r.estimate, r.std_error, r.target, r.z_score, r.threshold);
  return std::string(r.pass ? "PASS " : "FAIL ") + r.name + buf;
}

std::string to_json(const MomentReport& r) {
  std::string name;
  for (char c : r.name) {
    if (c == '"' || c == '\\') name += '\\';
    name += c;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "\",\"estimate\":%.17g,\"std_error\":%.17g,\"target\":%.17g,\"z\":%.17g,"
                "\"pass\":%s}",
                r.estimate, r.std_error, r.target, r.z_score, r.pass ? "true" : "false");
  return "{\"name\":\"" + name + buf;
}

}  // namespace spatialgen
