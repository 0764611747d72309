#pragma once

#include <cstddef>
#include <vector>

#include "spatialgen/dense.hpp"
#include "spatialgen/grid.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen {

/// Lower band of an n x n matrix with bandwidth p. Row i keeps columns
/// i-p .. i. A symmetric matrix mirrors the band above the diagonal; a
/// triangular one is zero there.
class BandMatrix {
 public:
  enum class Shape { Symmetric, Lower };

  BandMatrix(std::size_t n, std::size_t p, Shape shape = Shape::Symmetric);

  std::size_t n() const noexcept { return n_; }
  std::size_t bandwidth() const noexcept { return p_; }
  Shape shape() const noexcept { return shape_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    return (i >= j ? i - j : j - i) <= p_;
  }

  /// Entry (i, j) with j <= i and i - j <= p.
  double& lower(std::size_t i, std::size_t j) noexcept { return data_[i * (p_ + 1) + p_ + j - i]; }
  double lower(std::size_t i, std::size_t j) const noexcept {
    return data_[i * (p_ + 1) + p_ + j - i];
  }

  /// Any entry, honouring shape; zero outside the band.
  double operator()(std::size_t i, std::size_t j) const noexcept;

  Matrix to_dense() const;

 private:
  std::size_t n_;
  std::size_t p_;
  Shape shape_;
  std::vector<double> data_;
};

struct LatticeGmrfSpec {
  std::size_t m = 1;
  double diag_value = 2.0;
  double neighbor_value = -0.5;
};

/// Precision of the m x m 4-neighbour lattice (no wraparound). Site (i, j)
/// has index j * m + i, so the bandwidth is m.
BandMatrix build_lattice_precision(const LatticeGmrfSpec& spec);

/// Lower factor D with D D^T = M, same bandwidth. Throws FactorizationError
/// on a pivot at or below 1e-12 * max(diag).
BandMatrix band_cholesky(const BandMatrix& m);

/// Solves D^T y = z by back-substitution inside the band.
std::vector<double> band_back_substitute(const BandMatrix& lower, std::vector<double> z);

class GmrfSampler {
 public:
  explicit GmrfSampler(const LatticeGmrfSpec& spec);

  const LatticeGmrfSpec& spec() const noexcept { return spec_; }
  const BandMatrix& factor() const noexcept { return factor_; }

  /// mean is empty (zero mean) or has m*m entries in site order.
  Field sample(const std::vector<double>& mean, RngStream& stream) const;

 private:
  LatticeGmrfSpec spec_;
  BandMatrix factor_;
};

Field sample_gmrf(const LatticeGmrfSpec& spec, const std::vector<double>& mean,
                  RngStream& stream);

}  // namespace spatialgen
