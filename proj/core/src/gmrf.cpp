#include "spatialgen/gmrf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spatialgen/errors.hpp"

namespace spatialgen {

BandMatrix::BandMatrix(std::size_t n, std::size_t p, Shape shape)
    : n_(n), p_(p), shape_(shape), data_(n * (p + 1), 0.0) {
  if (n == 0) throw InvalidParameter("BandMatrix: n must be positive");
}

double BandMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
  if (!in_band(i, j)) return 0.0;
  if (j <= i) return lower(i, j);
  return shape_ == Shape::Symmetric ? lower(j, i) : 0.0;
}

Matrix BandMatrix::to_dense() const {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i > p_ ? i - p_ : 0; j < std::min(n_, i + p_ + 1); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j);
    }
  }
  return out;
}

BandMatrix build_lattice_precision(const LatticeGmrfSpec& spec) {
  if (spec.m == 0) throw InvalidParameter("build_lattice_precision: m must be positive");
  const std::size_t m = spec.m;
  BandMatrix q(m * m, m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t s = j * m + i;
      q.lower(s, s) = spec.diag_value;
      if (i > 0) q.lower(s, s - 1) = spec.neighbor_value;
      if (j > 0) q.lower(s, s - m) = spec.neighbor_value;
    }
  }
  return q;
}

BandMatrix band_cholesky(const BandMatrix& a) {
  if (a.shape() != BandMatrix::Shape::Symmetric) {
    throw InvalidParameter("band_cholesky: input must be symmetric");
  }
  const std::size_t n = a.n();
  const std::size_t p = a.bandwidth();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a.lower(i, i));
  const double tol = 1e-12 * max_diag;

  BandMatrix d(n, p, BandMatrix::Shape::Lower);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t first = i > p ? i - p : 0;
    for (std::size_t j = first; j <= i; ++j) {
      double s = a.lower(i, j);
      for (std::size_t k = first; k < j; ++k) s -= d.lower(i, k) * d.lower(j, k);
      if (i == j) {
        if (!(s > tol)) throw FactorizationError(i, s);
        d.lower(i, i) = std::sqrt(s);
      } else {
        d.lower(i, j) = s / d.lower(j, j);
      }
    }
  }
  return d;
}

std::vector<double> band_back_substitute(const BandMatrix& d, std::vector<double> z) {
  const std::size_t n = d.n();
  const std::size_t p = d.bandwidth();
  if (z.size() != n) throw InvalidParameter("band_back_substitute: size mismatch");
  for (std::size_t ii = n; ii-- > 0;) {
    double s = z[ii];
    const std::size_t last = std::min(n - 1, ii + p);
    for (std::size_t k = ii + 1; k <= last; ++k) s -= d.lower(k, ii) * z[k];
    z[ii] = s / d.lower(ii, ii);
  }
  return z;
}

GmrfSampler::GmrfSampler(const LatticeGmrfSpec& spec)
    : spec_(spec), factor_(band_cholesky(build_lattice_precision(spec))) {}

Field GmrfSampler::sample(const std::vector<double>& mean, RngStream& stream) const {
  const std::size_t n = spec_.m * spec_.m;
  if (!mean.empty() && mean.size() != n) {
    throw InvalidParameter("sample_gmrf: mean must be empty or have " + std::to_string(n) +
                           " entries");
  }
  std::vector<double> z(n);
  for (auto& v : z) v = stream.std_normal();
  auto y = band_back_substitute(factor_, std::move(z));
  if (!mean.empty()) {
    for (std::size_t k = 0; k < n; ++k) y[k] += mean[k];
  }
  return Field(Grid2D(spec_.m, spec_.m), std::move(y));
}

Field sample_gmrf(const LatticeGmrfSpec& spec, const std::vector<double>& mean,
                  RngStream& stream) {
  return GmrfSampler(spec).sample(mean, stream);
}

}  // namespace spatialgen
