#include "spatialgen/suites.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "spatialgen/circulant.hpp"
#include "spatialgen/dense.hpp"
#include "spatialgen/errors.hpp"
#include "spatialgen/fractional.hpp"
#include "spatialgen/gmrf.hpp"
#include "spatialgen/levy.hpp"
#include "spatialgen/mcmc.hpp"
#include "spatialgen/pointproc.hpp"

namespace spatialgen {

namespace {

using Reports = std::vector<MomentReport>;

Reports torus_suite(RngStream& stream) {
  const std::size_t n = 32;
  const TorusExp model(8.0, 1.0);
  const TorusPlan plan = plan_torus(n, model);
  std::vector<Field> fields;
  for (int k = 0; k < 200; ++k) fields.push_back(sample_torus(plan, stream));
  const double h = 1.0 / static_cast<double>(n);
  return {empirical_cov_at_lag(fields, 0, 0, 1.0),
          empirical_cov_at_lag(fields, 1, 0, eval_cov(model, Vec2{h, 0.0})),
          empirical_cov_at_lag(fields, 2, 3, eval_cov(model, Vec2{2 * h, 3 * h}))};
}

Reports gmrf_suite(RngStream& stream) {
  const LatticeGmrfSpec spec{3, 2.0, -0.5};
  const GmrfSampler sampler(spec);
  const Matrix prec = build_lattice_precision(spec).to_dense();
  const Matrix sigma = prec.inverse();
  std::vector<double> v0, v01;
  for (int k = 0; k < 20000; ++k) {
    const Field f = sampler.sample({}, stream);
    v0.push_back(f(0, 0) * f(0, 0));
    v01.push_back(f(0, 0) * f(0, 1));
  }
  const MeanSe a = mean_and_se(v0);
  const MeanSe b = mean_and_se(v01);
  return {make_report("gmrf var(site 0)", a.mean, a.se, sigma(0, 0)),
          make_report("gmrf cov(site 0, site 1)", b.mean, b.se, sigma(0, 1))};
}

Reports poisson_suite(RngStream& stream) {
  const IntensitySpec spec =
      CallableIntensity{[](const Vec2& x) { return 300.0 * (x[0] * x[0] + x[1] * x[1]); }, 600.0,
                        200.0};
  const Window w;
  std::vector<double> inv, thin;
  std::vector<std::uint64_t> counts;
  for (int k = 0; k < 2000; ++k) {
    inv.push_back(static_cast<double>(sample_poisson_inversion(spec, w, stream).size()));
    const std::size_t c = sample_poisson_thinning(spec, w, stream).size();
    thin.push_back(static_cast<double>(c));
    counts.push_back(c);
  }
  const MeanSe a = mean_and_se(inv);
  const MeanSe b = mean_and_se(thin);
  const double se = std::sqrt(200.0 / static_cast<double>(inv.size()));
  Reports out{make_report("poisson inversion mean", a.mean, se, 200.0),
              make_report("poisson thinning mean", b.mean, se, 200.0),
              make_report("poisson inversion vs thinning", two_sample_z(a, b), 1.0, 0.0)};
  out.push_back(dispersion_test(counts));
  return out;
}

Reports hawkes_suite(RngStream& stream) {
  const HawkesParams params;
  std::vector<double> n;
  for (int k = 0; k < 300; ++k) {
    n.push_back(static_cast<double>(sample_hawkes(params, Window{}, stream).size()));
  }
  const MeanSe m = batch_means(n, 30);
  return {make_report("hawkes total points", m.mean, m.se,
                      params.center_intensity / (1.0 - params.alpha))};
}

Reports strauss_suite(RngStream& stream) {
  const StraussParams params{100.0, 0.1, 0.2};
  const MeanSe q = pair_probability_oracle(params.r, 1000000, stream);
  const double target = params.gamma * q.mean / (params.gamma * q.mean + 1.0 - q.mean);
  const double dtarget = params.gamma / std::pow(params.gamma * q.mean + 1.0 - q.mean, 2) * q.se;
  const ChainSummary chain = run_conditional_strauss(2, params, 200000, stream);
  std::vector<double> s;
  for (const auto& row : chain.trace) s.push_back(static_cast<double>(row.s));
  const MeanSe m = batch_means(s);
  return {make_report("strauss P(s=1)", m.mean, std::hypot(m.se, dtarget), target)};
}

Reports fbm_suite(RngStream& stream) {
  const double hurst = 0.7;
  const FbmPlan plan = plan_fbm(256, hurst);
  std::vector<double> end, mid;
  for (int k = 0; k < 1000; ++k) {
    const FbmPair pair = sample_fbm_pair(plan, stream);
    for (const auto* p : {&pair.first, &pair.second}) {
      end.push_back(p->back());
      mid.push_back((*p)[128]);
    }
  }
  for (auto& v : end) v *= v;
  for (auto& v : mid) v *= v;
  const MeanSe a = mean_and_se(end);
  const MeanSe b = mean_and_se(mid);
  return {make_report("fbm var(W_1)", a.mean, a.se, 1.0),
          make_report("fbm var(W_1/2)", b.mean, b.se, std::pow(0.5, 2.0 * hurst))};
}

Reports levy_suite(RngStream& stream) {
  const double alpha = 10.0;
  const LevyPathSpec spec = gamma_process_spec(alpha, 0.01);
  const std::vector<double> times{0.5, 1.0};
  std::vector<double> x;
  for (int k = 0; k < 2000; ++k) x.push_back(sample_levy_path(spec, times, stream).values.back());
  const MeanSe m = mean_and_se(x);
  const MeanSe v = variance_and_se(x);
  const double var_target = partial_second_moment(spec.measure, 0.01, 1.0) +
                            partial_second_moment(spec.measure, 1.0, INFINITY);
  return {make_report("gamma path mean", m.mean, m.se,
                      spec.mu + partial_mean(spec.measure, 1.0, INFINITY)),
          make_report("gamma path variance", v.mean, v.se, var_target)};
}

Reports sheet_suite(RngStream& stream) {
  const LevySheetSpec spec = gamma_sheet_spec(50, 0.1, 100.0, 100.0);
  const Vec2 t{0.5, 0.5};
  std::vector<double> x;
  for (int k = 0; k < 2000; ++k) {
    x.push_back(evaluate_levy_sheet(spec, draw_gamma_cells(spec, stream), t));
  }
  const MeanSe m = mean_and_se(x);
  return {make_report("gamma sheet center mean", m.mean, m.se, expected_levy_sheet(spec, t))};
}

const std::map<std::string, std::function<Reports(RngStream&)>>& registry() {
  static const std::map<std::string, std::function<Reports(RngStream&)>> r{
      {"torus", torus_suite},   {"gmrf", gmrf_suite},       {"poisson", poisson_suite},
      {"hawkes", hawkes_suite}, {"strauss", strauss_suite}, {"fbm", fbm_suite},
      {"levy", levy_suite},     {"sheet", sheet_suite},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  names.push_back("all");
  return names;
}

std::vector<MomentReport> run_suite(const std::string& name, std::uint64_t seed) {
  const RngStream root(seed, 0);
  if (name == "all") {
    Reports out;
    std::uint64_t index = 0;
    for (const auto& [k, fn] : registry()) {
      RngStream s = root.split(index++);
      for (auto& r : fn(s)) out.push_back(std::move(r));
    }
    return out;
  }
  const auto it = registry().find(name);
  if (it == registry().end()) throw InvalidParameter("unknown validation suite: " + name);
  std::uint64_t index = 0;
  for (const auto& [k, fn] : registry()) {
    if (k == name) break;
    ++index;
  }
  RngStream s = root.split(index);
  return it->second(s);
}

}  // namespace spatialgen
