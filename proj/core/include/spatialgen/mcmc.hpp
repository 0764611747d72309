#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spatialgen/point_io.hpp"
#include "spatialgen/pointproc.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen {

/// Density proportional to beta^n(x) gamma^s(x) on the unit square.
struct StraussParams {
  double beta = 100.0;
  double gamma = 0.1;
  double r = 0.2;

  void validate() const;
};

/// Current configuration plus its cached pair count.
struct ChainState {
  std::vector<Vec2> points;
  std::size_t cached_s = 0;
  std::size_t step_index = 0;
};

/// Number of pairs i < j with |x_i - x_j| < r (strict).
std::size_t numpairs(std::span<const Vec2> points, double r);

/// Pairs between point `index` (placed at `at`) and every other point.
std::size_t pairs_with(std::span<const Vec2> points, std::size_t index, const Vec2& at, double r);

ChainState make_chain_state(std::vector<Vec2> points, double r);

/// min(gamma^(s_new - s_old), 1); 1 when the count does not increase.
double strauss_mh_acceptance(std::size_t s_old, std::size_t s_new, double gamma);

/// One random-walk update of a uniformly chosen point. Proposals outside the
/// unit square are rejected. Returns whether the move was accepted.
bool mh_step(ChainState& state, const StraussParams& params, double proposal_sigma,
             RngStream& stream);

/// Birth (append a uniform point) or death (remove a uniform index), each with
/// probability 1/2, accepted with
///   birth: beta gamma^ds / n(y),   death: n(x) gamma^ds / beta.
/// A death proposed from the empty state counts as a rejection.
bool rj_step(ChainState& state, const StraussParams& params, RngStream& stream);

struct ChainSummary {
  std::vector<TraceRow> trace;  // one row per step, after the step
  std::size_t accepted = 0;
  PointPattern final_pattern;
};

/// Fixed-n chain from a uniform start. `record_every` thins the trace.
ChainSummary run_conditional_strauss(std::size_t n, const StraussParams& params,
                                     std::size_t n_steps, RngStream& stream,
                                     double proposal_sigma = 0.1, std::size_t record_every = 1);

/// Birth-death chain from `initial` (empty by default).
ChainSummary run_rj_strauss(const StraussParams& params, std::size_t n_steps, RngStream& stream,
                            std::vector<Vec2> initial = {}, std::size_t record_every = 1);

/// log of e^-mu(E) / n! * prod lambda(x_i).
double poisson_log_density(const PointPattern& pattern, const IntensitySpec& intensity);

}  // namespace spatialgen
