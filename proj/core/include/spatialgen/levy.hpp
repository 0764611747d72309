#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "spatialgen/grid.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen {

/// Positive-jump Levy measure nu(dx) = density(x) dx on (0, inf).
struct LevyMeasure1D {
  std::function<double(double)> density;
  /// Draws from nu restricted to (a, b], normalized. b may be +inf.
  std::function<double(double, double, RngStream&)> sample_band;
};

/// nu((a, b]) by Gauss-Kronrod on unit panels in log x (relative tol 1e-10).
double band_mass(const LevyMeasure1D& nu, double a, double b);
/// nu((eps, inf)).
double tail_mass(const LevyMeasure1D& nu, double eps);
/// int_a^b x nu(dx).
double partial_mean(const LevyMeasure1D& nu, double a, double b);
/// int_a^b x^2 nu(dx).
double partial_second_moment(const LevyMeasure1D& nu, double a, double b);

/// Throws InvalidMeasure unless int min(1, x^2) nu(dx) is finite.
void check_integrability(const LevyMeasure1D& nu);

/// nu(dx) = alpha e^-x / x dx.
LevyMeasure1D gamma_levy_measure(double alpha);

/// Draw from alpha e^-x / x restricted to (a, b]. Pieces below 1 use a
/// log-uniform proposal accepted with probability e^-(x - a); pieces above 1
/// a truncated exponential proposal accepted with probability a / x. A band
/// straddling 1 picks its piece by mass. Throws InvalidMeasure for an empty band.
double gamma_jump_sampler(double alpha, double a, double b, RngStream& stream);

/// N ~ Poi(rate * t) iid jumps summed.
double sample_compound_poisson(double rate, const std::function<double(RngStream&)>& jump,
                               double t, RngStream& stream);

/// Drift, Brownian coefficient, Levy measure and truncation level. Truncation
/// levels at or above 1 leave only the big-jump part.
struct LevyPathSpec {
  double mu = 0.0;
  double sigma = 0.0;
  LevyMeasure1D measure;
  double epsilon = 1.0;
};

struct LevyPath {
  std::vector<double> times;
  std::vector<double> values;
  double epsilon = 1.0;
};

/// X(t) = mu t + sigma W(t) + J(t) + (J_eps(t) - t int_{eps < x <= 1} x nu(dx)),
/// big jumps J above 1 and compensated small jumps J_eps in (eps, 1].
LevyPath sample_levy_path(const LevyPathSpec& spec, std::span<const double> times,
                          RngStream& stream);

/// Adds compensated jumps from (epsilon_new, path.epsilon].
LevyPath refine_path(const LevyPath& path, const LevyPathSpec& spec, double epsilon_new,
                     RngStream& stream);

/// Gamma-process instance: mu = alpha (1 - e^-1), no Brownian part.
LevyPathSpec gamma_process_spec(double alpha, double epsilon);

using SheetKernel = std::function<double(const Vec2& t, const Vec2& x)>;

struct GammaCell {
  double alpha;
  double beta;
};

/// Lattice approximation sum_{i,j} kernel(t, (i/n, j/n)) Lambda_ij with
/// Lambda_ij ~ Gamma(alpha / n^2, beta). `support_radius` bounds |x - t| for
/// nonzero kernel values and lets evaluation skip far cells.
struct LevySheetSpec {
  std::size_t n = 100;
  SheetKernel kernel;
  GammaCell cells{100.0, 100.0};
  double support_radius = std::numeric_limits<double>::infinity();
};

/// (r^2 - |x - t|^2) on |x - t| <= r, else 0.
SheetKernel bump_kernel(double r);

LevySheetSpec gamma_sheet_spec(std::size_t n, double r, double alpha, double beta);

/// n x n cell values; entry (j, i) belongs to the cell with corner (i/n, j/n).
Field draw_gamma_cells(const LevySheetSpec& spec, RngStream& stream);

double evaluate_levy_sheet(const LevySheetSpec& spec, const Field& cells, const Vec2& t);

/// sum kernel(t, x_ij) * alpha / (beta n^2)
double expected_levy_sheet(const LevySheetSpec& spec, const Vec2& t);

/// Field on {(i/m, j/m)}, i, j < m, from a single draw of the cells.
Field sample_gamma_sheet(const LevySheetSpec& spec, std::size_t m, RngStream& stream);

}  // namespace spatialgen
