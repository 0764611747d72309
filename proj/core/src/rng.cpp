#include "spatialgen/rng.hpp"

#include <cmath>
#include <string>

#include "spatialgen/errors.hpp"

namespace spatialgen {

FactorizationError::FactorizationError(std::size_t pivot_index, double pivot_value)
    : Error("matrix is not positive definite: pivot " + std::to_string(pivot_index) +
            " has value " + std::to_string(pivot_value)),
      pivot_index_(pivot_index),
      pivot_value_(pivot_value) {}

EmbeddingInfeasible::EmbeddingInfeasible(double min_eigenvalue)
    : Error("could not find a nonnegative definite circulant embedding: minimum eigenvalue " +
            std::to_string(min_eigenvalue)),
      min_eigenvalue_(min_eigenvalue) {}

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix_next(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += kGolden);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t x) noexcept { return splitmix_next(x); }

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t sm = mix(seed) ^ mix(stream_id ^ 0xD1B54A32D192ED03ULL);
  for (auto& word : state_) word = splitmix_next(sm);
  // all-zero state is the one fixed point of xoshiro
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGolden;
}

RngStream RngStream::split(std::uint64_t index) const {
  return RngStream(seed_, mix(stream_id_ * kGolden + mix(index + 1)));
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw InvalidParameter("uniform_index: n must be positive");
  // Lemire's nearly-divisionless rejection
  __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<__uint128_t>(next_u64()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::std_normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::pair<double, double> RngStream::complex_std_normal() noexcept {
  const double re = std_normal();
  const double im = std_normal();
  return {re, im};
}

std::uint64_t RngStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw InvalidParameter("poisson: mean must be finite and nonnegative, got " +
                           std::to_string(mean));
  }
  if (mean == 0.0) return 0;
  return mean < 30.0 ? poisson_inversion(mean) : poisson_ptrs(mean);
}

std::uint64_t RngStream::poisson_inversion(double mean) {
  // sequential search on the CDF
  double p = std::exp(-mean);
  double cdf = p;
  const double u = uniform();
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    const double next = cdf + p;
    if (next == cdf) break;  // tail underflow
    cdf = next;
  }
  return k;
}

std::uint64_t RngStream::poisson_ptrs(double mean) {
  // Hörmann (1993), transformed rejection with squeeze
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

double RngStream::gamma_shape_ge1(double shape) {
  // Marsaglia & Tsang (2000)
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x, v;
    do {
      x = std_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate)) {
    throw InvalidParameter("gamma: shape and rate must be positive and finite");
  }
  if (shape >= 1.0) return gamma_shape_ge1(shape) / rate;
  // boost: G(a) = G(a + 1) * U^(1/a), in log space
  const double g = gamma_shape_ge1(shape + 1.0);
  const double log_u = std::log(uniform_open());
  return std::exp(std::log(g) + log_u / shape) / rate;
}

double RngStream::exponential(double rate) {
  if (!(rate > 0.0)) throw InvalidParameter("exponential: rate must be positive");
  return -std::log(uniform_open()) / rate;
}

}  // namespace spatialgen
