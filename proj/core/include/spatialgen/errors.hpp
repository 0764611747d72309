#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spatialgen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its documented domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Cholesky factorization met a nonpositive pivot.
class FactorizationError : public Error {
 public:
  FactorizationError(std::size_t pivot_index, double pivot_value);

  std::size_t pivot_index() const noexcept { return pivot_index_; }
  double pivot_value() const noexcept { return pivot_value_; }

 private:
  std::size_t pivot_index_;
  double pivot_value_;
};

/// The circulant embedding has an eigenvalue below the clipping threshold.
class EmbeddingInfeasible : public Error {
 public:
  explicit EmbeddingInfeasible(double min_eigenvalue);

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// An intensity exceeded the upper bound its caller promised.
class InvalidBound : public Error {
 public:
  using Error::Error;
};

/// Branching process with mean offspring >= 1.
class Supercritical : public Error {
 public:
  using Error::Error;
};

/// A generator hit its hard point cap.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

/// Lévy measure fails the integrability condition or has an empty band.
class InvalidMeasure : public Error {
 public:
  using Error::Error;
};

/// Not enough data for a statistical estimate.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace spatialgen
