#include "spatialgen/mcmc.hpp"

#include <cmath>
#include <string>

#include "spatialgen/errors.hpp"

namespace spatialgen {

namespace {

bool within(const Vec2& a, const Vec2& b, double r) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy < r * r;
}

bool in_unit_square(const Vec2& p) {
  return p[0] >= 0.0 && p[0] <= 1.0 && p[1] >= 0.0 && p[1] <= 1.0;
}

void record(ChainSummary& summary, const ChainState& state, std::size_t every) {
  if (state.step_index % every == 0) {
    summary.trace.push_back({state.step_index, state.points.size(), state.cached_s});
  }
}

}  // namespace

void StraussParams::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidParameter("Strauss beta must be >= 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidParameter("Strauss gamma must lie in [0, 1]");
  if (!(r > 0.0)) throw InvalidParameter("Strauss r must be positive");
}

std::size_t numpairs(std::span<const Vec2> points, double r) {
  std::size_t s = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) s += within(points[i], points[j], r);
  }
  return s;
}

std::size_t pairs_with(std::span<const Vec2> points, std::size_t index, const Vec2& at, double r) {
  std::size_t s = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k != index) s += within(points[k], at, r);
  }
  return s;
}

ChainState make_chain_state(std::vector<Vec2> points, double r) {
  ChainState state;
  state.cached_s = numpairs(points, r);
  state.points = std::move(points);
  return state;
}

double strauss_mh_acceptance(std::size_t s_old, std::size_t s_new, double gamma) {
  if (s_new <= s_old) return 1.0;
  return std::pow(gamma, static_cast<double>(s_new - s_old));
}

bool mh_step(ChainState& state, const StraussParams& params, double proposal_sigma,
             RngStream& stream) {
  ++state.step_index;
  const std::size_t n = state.points.size();
  if (n == 0) return false;
  const std::size_t j = stream.uniform_index(n);
  const Vec2 old = state.points[j];
  const double u = proposal_sigma * stream.std_normal();
  const double v = proposal_sigma * stream.std_normal();
  const Vec2 proposal{old[0] + u, old[1] + v};
  const double accept_draw = stream.uniform();
  if (!in_unit_square(proposal)) return false;

  const std::size_t before = pairs_with(state.points, j, old, params.r);
  const std::size_t after = pairs_with(state.points, j, proposal, params.r);
  const std::size_t s_new = state.cached_s - before + after;
  if (accept_draw < strauss_mh_acceptance(state.cached_s, s_new, params.gamma)) {
    state.points[j] = proposal;
    state.cached_s = s_new;
    return true;
  }
  return false;
}

bool rj_step(ChainState& state, const StraussParams& params, RngStream& stream) {
  ++state.step_index;
  const double n = static_cast<double>(state.points.size());
  if (stream.uniform() < 0.5) {
    const Vec2 p{stream.uniform(), stream.uniform()};
    const std::size_t added = pairs_with(state.points, state.points.size(), p, params.r);
    const double ratio =
        params.beta * std::pow(params.gamma, static_cast<double>(added)) / (n + 1.0);
    if (stream.uniform() < ratio) {
      state.points.push_back(p);
      state.cached_s += added;
      return true;
    }
    return false;
  }
  if (state.points.empty()) return false;
  const std::size_t j = stream.uniform_index(state.points.size());
  const std::size_t removed = pairs_with(state.points, j, state.points[j], params.r);
  // gamma^(s(y) - s(x)) = gamma^-removed
  const double ratio = n * std::pow(params.gamma, -static_cast<double>(removed)) / params.beta;
  if (stream.uniform() < ratio) {
    state.points.erase(state.points.begin() + static_cast<std::ptrdiff_t>(j));
    state.cached_s -= removed;
    return true;
  }
  return false;
}

ChainSummary run_conditional_strauss(std::size_t n, const StraussParams& params,
                                     std::size_t n_steps, RngStream& stream,
                                     double proposal_sigma, std::size_t record_every) {
  params.validate();
  if (n == 0) throw InvalidParameter("run_conditional_strauss: n must be positive");
  if (!(proposal_sigma > 0.0)) throw InvalidParameter("proposal sigma must be positive");
  if (record_every == 0) record_every = 1;
  std::vector<Vec2> start(n);
  for (auto& p : start) {
    const double x = stream.uniform();
    const double y = stream.uniform();
    p = {x, y};
  }
  ChainState state = make_chain_state(std::move(start), params.r);
  ChainSummary summary;
  summary.trace.reserve(n_steps / record_every + 1);
  for (std::size_t k = 0; k < n_steps; ++k) {
    summary.accepted += mh_step(state, params, proposal_sigma, stream);
    record(summary, state, record_every);
  }
  summary.final_pattern.points = std::move(state.points);
  return summary;
}

ChainSummary run_rj_strauss(const StraussParams& params, std::size_t n_steps, RngStream& stream,
                            std::vector<Vec2> initial, std::size_t record_every) {
  params.validate();
  if (record_every == 0) record_every = 1;
  for (const auto& p : initial) {
    if (!in_unit_square(p)) throw InvalidParameter("run_rj_strauss: initial point outside window");
  }
  ChainState state = make_chain_state(std::move(initial), params.r);
  ChainSummary summary;
  summary.trace.reserve(n_steps / record_every + 1);
  for (std::size_t k = 0; k < n_steps; ++k) {
    summary.accepted += rj_step(state, params, stream);
    record(summary, state, record_every);
  }
  summary.final_pattern.points = std::move(state.points);
  return summary;
}

double poisson_log_density(const PointPattern& pattern, const IntensitySpec& intensity) {
  const double mu = mean_measure(intensity, pattern.window);
  double log_f = -mu - std::lgamma(static_cast<double>(pattern.size()) + 1.0);
  for (const auto& p : pattern.points) log_f += std::log(intensity_at(intensity, pattern.window, p));
  return log_f;
}

}  // namespace spatialgen
