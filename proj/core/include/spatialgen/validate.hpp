#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spatialgen/grid.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen {

/// One moment check: estimate vs target with a standard error.
struct MomentReport {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  double z_score = 0.0;
  bool pass = false;
  double threshold = 3.0;
};

/// Builds a report; z = (estimate - target) / se. se must be positive.
MomentReport make_report(std::string name, double estimate, double std_error, double target,
                         double threshold = 3.0);

struct MeanSe {
  double mean;
  double se;
};

/// Mean and iid standard error; needs at least two values.
MeanSe mean_and_se(std::span<const double> values);

/// Sample variance (n - 1 denominator) with its delta-method standard error
/// from the fourth central moment.
MeanSe variance_and_se(std::span<const double> values);

/// Mean and batch-means standard error for serially dependent data.
MeanSe batch_means(std::span<const double> values, std::size_t batches = 50);

/// z for the difference of two independent estimates.
double two_sample_z(const MeanSe& a, const MeanSe& b);

/// Mean over positions and realizations of X[p] * X[p + lag]. The SE comes
/// from the spread of the per-realization averages. Needs >= 100 fields.
MomentReport empirical_cov_at_lag(std::span<const Field> realizations, long di, long dj,
                                  double target, double threshold = 4.0,
                                  bool subtract_mean = false);

/// Variance-to-mean ratio with a jackknife SE; target 1. Needs >= 1000 counts.
MomentReport dispersion_test(std::span<const std::uint64_t> counts, double threshold = 3.0);

/// Monte Carlo P(|U - V| < r) for U, V uniform on the unit square.
MeanSe pair_probability_oracle(double r, std::uint64_t n_samples, RngStream& stream);

/// Upper-tail probability of a chi-square statistic.
double chi_square_pvalue(double statistic, double dof);

/// "PASS name estimate=... se=... target=... z=..."
std::string to_text(const MomentReport& report);

/// {"name":..., "estimate":..., "target":..., "z":..., "pass":...}
std::string to_json(const MomentReport& report);

}  // namespace spatialgen
