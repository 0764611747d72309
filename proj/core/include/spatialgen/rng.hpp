#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <utility>

namespace spatialgen {

/// Seeded, splittable random source (xoshiro256++ core).
///
/// The 256-bit state is derived from (seed, stream_id) through splitmix64, so
/// equal pairs reproduce the same sequence bit for bit and distinct stream ids
/// give unrelated states. A stream has a single owner; parallel work should
/// use split() to obtain one stream per worker.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Child stream keyed by `index`; does not advance this stream.
  RngStream split(std::uint64_t index) const;

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() noexcept;
  /// Uniform on (0, 1); safe to pass to log().
  double uniform_open() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  double std_normal() noexcept;
  /// Independent (re, im) standard normal pair.
  std::pair<double, double> complex_std_normal() noexcept;

  /// Poisson(mean): inversion below mean 30, PTRS transformed rejection above.
  std::uint64_t poisson(double mean);

  /// Gamma with the given shape and rate (mean shape / rate).
  double gamma(double shape, double rate);

  double exponential(double rate);

  // UniformRandomBitGenerator
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept { return next_u64(); }

 private:
  std::uint64_t poisson_inversion(double mean);
  std::uint64_t poisson_ptrs(double mean);
  double gamma_shape_ge1(double shape);

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spatialgen
