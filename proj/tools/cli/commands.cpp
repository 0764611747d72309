#include "cli/commands.hpp"

#include <cmath>
#include <sstream>

#include "spatialgen/circulant.hpp"
#include "spatialgen/dense.hpp"
#include "spatialgen/errors.hpp"
#include "spatialgen/fractional.hpp"
#include "spatialgen/gmrf.hpp"
#include "spatialgen/levy.hpp"
#include "spatialgen/mcmc.hpp"
#include "spatialgen/pointproc.hpp"

namespace spatialgen::cli {

double Params::real(const std::string& key) const { return reals.at(key); }
std::uint64_t Params::integer(const std::string& key) const { return ints.at(key); }
const std::string& Params::text(const std::string& key) const { return strings.at(key); }

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InvalidParameter("bad number in list: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidParameter("empty list");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (double v : parse_real_list(text)) {
    if (!(v >= 1.0) || v != std::floor(v)) throw InvalidParameter("sizes must be positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

namespace {

const std::set<Format> kGridFormats{Format::GridBinary, Format::Pgm, Format::Csv, Format::JsonMeta};
const std::set<Format> kGridDefault{Format::GridBinary, Format::JsonMeta};
const std::set<Format> kCsvFormats{Format::Csv, Format::JsonMeta};

// torus grids of 128 and up carry small negative eigenvalues for exp(-c|h|)
constexpr double kCliClipTolerance = 1e-4;

std::size_t as_size(const Params& p, const std::string& key) {
  return static_cast<std::size_t>(p.integer(key));
}

Artifact field_artifact(Field f) {
  Artifact a;
  a.field = std::move(f);
  return a;
}

Artifact points_artifact(PointPattern p) {
  Artifact a;
  a.points = std::move(p);
  return a;
}

std::vector<double> unit_times(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = static_cast<double>(k + 1) / static_cast<double>(n);
  return t;
}

Series from_origin(std::string suffix, const std::vector<double>& times,
                   const std::vector<double>& values) {
  Series s{std::move(suffix), {0.0}, {0.0}};
  s.times.insert(s.times.end(), times.begin(), times.end());
  s.values.insert(s.values.end(), values.begin(), values.end());
  return s;
}

IntensitySpec poisson_intensity(const Params& p) {
  const double lambda = p.real("lambda");
  const std::string& kind = p.text("intensity");
  if (kind == "constant") return Homogeneous{lambda};
  if (kind == "quadratic") {
    return CallableIntensity{[lambda](const Vec2& x) { return lambda * (x[0] * x[0] + x[1] * x[1]); },
                             2.0 * lambda, 2.0 * lambda / 3.0};
  }
  throw InvalidParameter("intensity must be 'quadratic' or 'constant'");
}

std::vector<Command> build() {
  std::vector<Command> c;

  c.push_back({"gaussian-ma", "moving-average Gaussian field on an n x n grid",
               {{{"r", 6.0}}, {{"n", 200}}, {}}, kGridFormats, kGridDefault,
               [](const Params& p) -> Generator {
                 const std::size_t n = as_size(p, "n");
                 const double r = p.real("r");
                 if (!(r >= 0.0)) throw InvalidParameter("r must be nonnegative");
                 const auto reach = static_cast<std::size_t>(std::floor(r));
                 return [n, r, reach](RngStream& s) {
                   Field noise(Grid2D(n + 2 * reach, n + 2 * reach));
                   for (auto& v : noise.values()) v = s.std_normal();
                   return field_artifact(moving_average_field(noise, r));
                 };
               }});

  c.push_back({"torus", "stationary field on the unit torus, covariance exp(-c |h|^alpha)",
               {{{"c", 8.0}, {"alpha", 1.0}, {"clip-tol", kCliClipTolerance}}, {{"n", 256}}, {}},
               kGridFormats, kGridDefault,
               [](const Params& p) -> Generator {
                 auto plan = std::make_shared<TorusPlan>(plan_torus(
                     as_size(p, "n"), TorusExp(p.real("c"), p.real("alpha")), p.real("clip-tol")));
                 return [plan](RngStream& s) { return field_artifact(sample_torus(*plan, s)); };
               }});

  c.push_back({"embed",
               "circulant embedding on an m (rows) x n (columns) grid; model wavy or custom "
               "(custom: exp(-c |h|^alpha))",
               {{{"dx", 1.0}, {"dy", 1.0}, {"c", 1.0}, {"alpha", 1.0}},
                {{"m", 512}, {"n", 384}},
                {{"model", "wavy"}}},
               kGridFormats, kGridDefault,
               [](const Params& p) -> Generator {
                 const Grid2D grid(as_size(p, "n"), as_size(p, "m"), p.real("dx"), p.real("dy"));
                 LagCovariance rho;
                 if (p.text("model") == "wavy") {
                   rho = [](double hx, double hy) { return eval_cov(Wavy{}, Vec2{hx, hy}); };
                 } else if (p.text("model") == "custom") {
                   const double cc = p.real("c");
                   const double a = p.real("alpha");
                   if (!(cc > 0.0) || !(a > 0.0 && a <= 2.0)) {
                     throw InvalidParameter("custom model needs c > 0 and alpha in (0, 2]");
                   }
                   rho = [cc, a](double hx, double hy) {
                     return std::exp(-cc * std::pow(std::hypot(hx, hy), a));
                   };
                 } else {
                   throw InvalidParameter("model must be 'wavy' or 'custom'");
                 }
                 auto plan = std::make_shared<EmbeddingPlan>(plan_embedding_auto(grid, rho));
                 return [plan](RngStream& s) {
                   return field_artifact(sample_embedded(*plan, s).first);
                 };
               }});

  c.push_back({"gmrf", "lattice Gaussian Markov random field on an m x m grid",
               {{{"diag", 2.0}, {"neighbor", -0.5}}, {{"m", 100}}, {}}, kGridFormats, kGridDefault,
               [](const Params& p) -> Generator {
                 auto sampler = std::make_shared<GmrfSampler>(
                     LatticeGmrfSpec{as_size(p, "m"), p.real("diag"), p.real("neighbor")});
                 return [sampler](RngStream& s) { return field_artifact(sampler->sample({}, s)); };
               }});

  c.push_back({"poisson",
               "Poisson process on the unit square; intensity quadratic (lambda (x^2 + y^2)) or "
               "constant (lambda); mode invert or thin",
               {{{"lambda", 300.0}}, {}, {{"mode", "invert"}, {"intensity", "quadratic"}}},
               kCsvFormats, kCsvFormats,
               [](const Params& p) -> Generator {
                 const IntensitySpec spec = poisson_intensity(p);
                 const std::string mode = p.text("mode");
                 if (mode != "invert" && mode != "thin") {
                   throw InvalidParameter("mode must be 'invert' or 'thin'");
                 }
                 return [spec, mode](RngStream& s) {
                   return points_artifact(mode == "invert"
                                              ? sample_poisson_inversion(spec, Window{}, s)
                                              : sample_poisson_thinning(spec, Window{}, s));
                 };
               }});

  c.push_back({"marked", "homogeneous Poisson process with uniform marks on [0, mark-max]",
               {{{"lambda", 100.0}, {"mark-max", 0.1}}, {}, {}}, kCsvFormats, kCsvFormats,
               [](const Params& p) -> Generator {
                 const double lambda = p.real("lambda");
                 const double hi = p.real("mark-max");
                 if (!(hi > 0.0)) throw InvalidParameter("mark-max must be positive");
                 return [lambda, hi](RngStream& s) {
                   return points_artifact(sample_marked_poisson(
                       Homogeneous{lambda}, Window{}, [hi](RngStream& r) { return r.uniform(0.0, hi); },
                       s));
                 };
               }});

  c.push_back({"hawkes", "Hawkes cluster process (lambda centers, alpha mean offspring)",
               {{{"lambda", 30.0}, {"alpha", 0.9}, {"sigma", 0.02}}, {}, {}}, kCsvFormats,
               kCsvFormats,
               [](const Params& p) -> Generator {
                 const HawkesParams hp{p.real("lambda"), p.real("alpha"), p.real("sigma")};
                 return [hp](RngStream& s) {
                   return points_artifact(sample_hawkes(hp, Window{}, s));
                 };
               }});

  c.push_back({"matern", "Matern cluster process (kappa centers, alpha mean offspring, radius r)",
               {{{"kappa", 20.0}, {"alpha", 5.0}, {"r", 0.1}}, {}, {}}, kCsvFormats, kCsvFormats,
               [](const Params& p) -> Generator {
                 const double kappa = p.real("kappa"), alpha = p.real("alpha");
                 const ClusterKernel k = MaternBall{p.real("r")};
                 return [=](RngStream& s) {
                   return points_artifact(sample_neyman_scott(kappa, alpha, k, Window{}, s));
                 };
               }});

  c.push_back({"thomas", "Thomas cluster process (kappa centers, alpha mean offspring, sigma)",
               {{{"kappa", 20.0}, {"alpha", 5.0}, {"sigma", 0.02}}, {}, {}}, kCsvFormats,
               kCsvFormats,
               [](const Params& p) -> Generator {
                 const double kappa = p.real("kappa"), alpha = p.real("alpha");
                 const ClusterKernel k = ThomasGauss{p.real("sigma")};
                 return [=](RngStream& s) {
                   return points_artifact(sample_neyman_scott(kappa, alpha, k, Window{}, s));
                 };
               }});

  c.push_back({"cox",
               "Cox process with intensity lambda where a torus field (n, c, alpha) is negative",
               {{{"lambda", 3000.0}, {"c", 8.0}, {"alpha", 1.0}, {"clip-tol", kCliClipTolerance}},
                {{"n", 256}},
                {}},
               kGridFormats, kCsvFormats,
               [](const Params& p) -> Generator {
                 auto plan = std::make_shared<TorusPlan>(plan_torus(
                     as_size(p, "n"), TorusExp(p.real("c"), p.real("alpha")), p.real("clip-tol")));
                 const double lambda = p.real("lambda");
                 if (!(lambda >= 0.0)) throw InvalidParameter("lambda must be nonnegative");
                 return [plan, lambda](RngStream& s) {
                   auto transform = [lambda](double v) { return v < 0.0 ? lambda : 0.0; };
                   CoxResult r = sample_cox(
                       [&](RngStream& rs) -> IntensitySpec {
                         return FieldDriven{sample_torus(*plan, rs), transform};
                       },
                       Window{}, s);
                   Artifact a = points_artifact(std::move(r.pattern));
                   Field f = std::get<FieldDriven>(r.intensity).field;
                   for (auto& v : f.values()) v = transform(v);
                   a.field = std::move(f);
                   return a;
                 };
               }});

  c.push_back({"snox", "shot-noise Cox process with gamma-driven centers",
               {{{"alpha", 1.0}, {"beta", 50.0}, {"lambda", 1.0}, {"sigma", 0.02}}, {}, {}},
               kCsvFormats, kCsvFormats,
               [](const Params& p) -> Generator {
                 const ShotNoiseGParams sp{p.real("alpha"), p.real("beta"), p.real("lambda"),
                                           p.real("sigma")};
                 return [sp](RngStream& s) {
                   return points_artifact(sample_shot_noise_g(sp, Window{}, s));
                 };
               }});

  c.push_back({"strauss-cond", "Strauss process with n points, Metropolis-Hastings",
               {{{"gamma", 0.1}, {"r", 0.2}, {"sigma", 0.1}}, {{"n", 200}, {"steps", 10000}}, {}},
               kCsvFormats, kCsvFormats,
               [](const Params& p) -> Generator {
                 StraussParams sp;
                 sp.gamma = p.real("gamma");
                 sp.r = p.real("r");
                 sp.validate();
                 const std::size_t n = as_size(p, "n"), steps = as_size(p, "steps");
                 const double sigma = p.real("sigma");
                 return [=](RngStream& s) {
                   ChainSummary chain = run_conditional_strauss(n, sp, steps, s, sigma);
                   Artifact a = points_artifact(std::move(chain.final_pattern));
                   a.trace = std::move(chain.trace);
                   return a;
                 };
               }});

  c.push_back({"strauss-rj", "Strauss process, reversible-jump birth/death",
               {{{"beta", 100.0}, {"gamma", 0.2}, {"r", 0.1}}, {{"steps", 10000}}, {}},
               kCsvFormats, kCsvFormats,
               [](const Params& p) -> Generator {
                 const StraussParams sp{p.real("beta"), p.real("gamma"), p.real("r")};
                 sp.validate();
                 const std::size_t steps = as_size(p, "steps");
                 return [=](RngStream& s) {
                   ChainSummary chain = run_rj_strauss(sp, steps, s);
                   Artifact a = points_artifact(std::move(chain.final_pattern));
                   a.trace = std::move(chain.trace);
                   return a;
                 };
               }});

  c.push_back({"wiener", "Wiener process on [0, 1] at n equal steps",
               {{}, {{"n", 1000}}, {}}, kCsvFormats, kCsvFormats,
               [](const Params& p) -> Generator {
                 const auto times = unit_times(as_size(p, "n"));
                 return [times](RngStream& s) {
                   Artifact a;
                   a.series.push_back(from_origin("", times, sample_wiener_path(times, s)));
                   return a;
                 };
               }});

  c.push_back({"fbm", "fractional Brownian motion on [0, 1] at n steps, Hurst H",
               {{{"H", 0.9}}, {{"n", 1024}}, {}}, kCsvFormats, kCsvFormats,
               [](const Params& p) -> Generator {
                 auto plan = std::make_shared<FbmPlan>(plan_fbm(as_size(p, "n"), p.real("H")));
                 return [plan](RngStream& s) {
                   std::vector<double> path = sample_fbm_pair(*plan, s).first;
                   Series series{"", {}, std::move(path)};
                   for (std::size_t k = 0; k < series.values.size(); ++k) {
                     series.times.push_back(static_cast<double>(k) / static_cast<double>(plan->n));
                   }
                   Artifact a;
                   a.series.push_back(std::move(series));
                   return a;
                 };
               }});

  c.push_back({"sheet", "fractional Wiener sheet on an (n+1) x (n+1) grid, Hurst H",
               {{{"H", 0.8}}, {{"n", 256}}, {}}, kGridFormats, kGridDefault,
               [](const Params& p) -> Generator {
                 auto plan = std::make_shared<SheetPlan>(plan_sheet(as_size(p, "n"), p.real("H")));
                 return [plan](RngStream& s) {
                   return field_artifact(sample_sheet_pair(*plan, s).first);
                 };
               }});

  c.push_back({"fbf", "fractional Brownian field on the quarter disk, m x n grid, Hurst H",
               {{{"H", 0.8}}, {{"m", 256}, {"n", 256}}, {}}, kGridFormats, kGridDefault,
               [](const Params& p) -> Generator {
                 auto plan = std::make_shared<FbfPlan>(
                     plan_fbf(as_size(p, "m"), as_size(p, "n"), p.real("H")));
                 return [plan](RngStream& s) {
                   MaskedField f = sample_fbf_pair(*plan, s).first;
                   Artifact a = field_artifact(std::move(f.field));
                   a.mask = std::move(f.mask);
                   return a;
                 };
               }});

  c.push_back({"levy-path",
               "gamma process path at n steps on [0, 1], refined through each jump cutoff in eps",
               {{{"alpha", 10.0}}, {{"n", 1000}}, {{"eps", "0.1,0.01,0.001"}}}, kCsvFormats,
               kCsvFormats,
               [](const Params& p) -> Generator {
                 const double alpha = p.real("alpha");
                 const auto eps = parse_real_list(p.text("eps"));
                 for (std::size_t k = 0; k < eps.size(); ++k) {
                   if (!(eps[k] > 0.0) || (k > 0 && !(eps[k] < eps[k - 1]))) {
                     throw InvalidParameter("eps must be positive and strictly decreasing");
                   }
                 }
                 const auto times = unit_times(as_size(p, "n"));
                 return [=](RngStream& s) {
                   const LevyPathSpec spec = gamma_process_spec(alpha, eps.front());
                   LevyPath path = sample_levy_path(spec, times, s);
                   Artifact a;
                   a.series.push_back(from_origin("_eps0", times, path.values));
                   for (std::size_t k = 1; k < eps.size(); ++k) {
                     path = refine_path(path, spec, eps[k], s);
                     a.series.push_back(from_origin("_eps" + std::to_string(k), times, path.values));
                   }
                   return a;
                 };
               }});

  c.push_back({"levy-sheet", "gamma Levy sheet: n x n cells, bump kernel radius r, m x m output",
               {{{"r", 0.05}, {"alpha", 100.0}, {"beta", 100.0}}, {{"n", 100}, {"m", 100}}, {}},
               kGridFormats, kGridDefault,
               [](const Params& p) -> Generator {
                 const LevySheetSpec spec = gamma_sheet_spec(as_size(p, "n"), p.real("r"),
                                                             p.real("alpha"), p.real("beta"));
                 if (!(spec.cells.alpha > 0.0) || !(spec.cells.beta > 0.0)) {
                   throw InvalidParameter("alpha and beta must be positive");
                 }
                 const std::size_t m = as_size(p, "m");
                 return [spec, m](RngStream& s) { return field_artifact(sample_gamma_sheet(spec, m, s)); };
               }});

  return c;
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> table = build();
  return table;
}

}  // namespace spatialgen::cli
