#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "spatialgen/circulant.hpp"
#include "spatialgen/errors.hpp"
#include "spatialgen/point_io.hpp"
#include "spatialgen/suites.hpp"
#include "spatialgen/version.hpp"

namespace spatialgen::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::string out;
  std::string formats;
  std::uint64_t realizations = 1;
};

struct Bound {
  CLI::App* app = nullptr;
  const Command* command = nullptr;  // null for validate and bench
  Params params;
  RunConfig config;
};

void bind_params(CLI::App* sub, Params& p) {
  for (auto& [k, v] : p.reals) sub->add_option("--" + k, v)->capture_default_str();
  for (auto& [k, v] : p.ints) sub->add_option("--" + k, v)->capture_default_str();
  for (auto& [k, v] : p.strings) sub->add_option("--" + k, v)->capture_default_str();
}

void bind_config(CLI::App* sub, RunConfig& c, bool out_required) {
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  auto* out = sub->add_option("--out", c.out, "output path without extension");
  if (out_required) out->required();
  sub->add_option("--formats", c.formats,
                  "comma list of grid-binary, pgm, csv, json-meta");
  sub->add_option("--realizations", c.realizations, "independent realizations (split streams)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

std::set<Format> resolve_formats(const std::string& text, const std::set<Format>& allowed,
                                 const std::set<Format>& fallback) {
  if (text.empty()) return fallback;
  std::set<Format> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Format f;
    try {
      f = parse_format(item);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (!allowed.count(f)) throw UsageError("format '" + item + "' is not produced by this subcommand");
    out.insert(f);
  }
  return out;
}

json params_json(const Params& p) {
  json j = json::object();
  for (const auto& [k, v] : p.reals) j[k] = v;
  for (const auto& [k, v] : p.ints) j[k] = v;
  for (const auto& [k, v] : p.strings) j[k] = v;
  return j;
}

void write_sidecar(const std::string& name, const Params& p, const RunConfig& c,
                   const std::set<Format>& formats) {
  json j;
  j["subcommand"] = name;
  j["params"] = params_json(p);
  j["seed"] = c.seed;
  j["realizations"] = c.realizations;
  j["formats"] = json::array();
  for (Format f : formats) j["formats"].push_back(format_name(f));
  j["version"] = std::string(kVersion);
  const fs::path path(c.out + ".json");
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

void ensure_parent(const std::string& out) {
  const fs::path parent = fs::path(out).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

std::string realization_base(const RunConfig& c, std::uint64_t k) {
  if (c.realizations == 1) return c.out;
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%04llu", static_cast<unsigned long long>(k));
  return c.out + buf;
}

int run_generator(const Bound& b) {
  const Command& cmd = *b.command;
  const auto formats = resolve_formats(b.config.formats, cmd.allowed, cmd.default_formats);
  const Generator gen = cmd.prepare(b.params);
  ensure_parent(b.config.out);
  const RngStream root(b.config.seed);
  for (std::uint64_t k = 0; k < b.config.realizations; ++k) {
    RngStream stream = root.split(k);
    const Artifact a = gen(stream);
    for (const auto& p : write_artifact(a, realization_base(b.config, k), formats)) {
      std::cout << p.string() << '\n';
    }
  }
  if (formats.count(Format::JsonMeta)) write_sidecar(cmd.name, b.params, b.config, formats);
  return 0;
}

int run_validate(const Bound& b) {
  const auto reports = run_suite(b.params.text("suite"), b.config.seed);
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << to_text(r) << '\n';
    ok = ok && r.pass;
  }
  if (!b.config.out.empty()) {
    const auto formats =
        resolve_formats(b.config.formats, {Format::JsonMeta}, {Format::JsonMeta});
    ensure_parent(b.config.out);
    std::ofstream out(b.config.out + "_report.json");
    if (!out) throw Error("cannot write report");
    out << "[\n";
    for (std::size_t k = 0; k < reports.size(); ++k) {
      out << "  " << to_json(reports[k]) << (k + 1 < reports.size() ? ",\n" : "\n");
    }
    out << "]\n";
    write_sidecar("validate", b.params, b.config, formats);
  }
  return ok ? 0 : 1;
}

int run_bench(const Bound& b) {
  ScalingOptions opt;
  opt.dense_max_points = static_cast<std::size_t>(b.params.integer("dense-max"));
  opt.min_seconds = b.params.real("min-seconds");
  opt.seed = b.config.seed;
  const ScalingReport rep = benchmark_scaling(parse_size_list(b.params.text("sizes")), opt);
  std::printf("%8s %10s %14s %14s\n", "n", "N", "circulant_s", "dense_s");
  for (const auto& r : rep.rows) {
    std::printf("%8zu %10zu %14.6g %14.6g\n", r.n_per_axis, r.total_points, r.circulant_seconds,
                r.dense_seconds);
  }
  std::printf("slope vs N: circulant %.3f dense %.3f\n", rep.circulant_slope_total,
              rep.dense_slope_total);
  std::printf("slope vs n: circulant %.3f dense %.3f\n", rep.circulant_slope_axis,
              rep.dense_slope_axis);
  if (!b.config.out.empty()) {
    const auto formats = resolve_formats(b.config.formats, {Format::Csv, Format::JsonMeta},
                                         {Format::Csv, Format::JsonMeta});
    ensure_parent(b.config.out);
    if (formats.count(Format::Csv)) {
      std::ofstream out(b.config.out + ".csv");
      if (!out) throw Error("cannot write benchmark table");
      out << "n,N,circulant_seconds,dense_seconds\n";
      for (const auto& r : rep.rows) {
        out << r.n_per_axis << ',' << r.total_points << ',' << format_double(r.circulant_seconds)
            << ',' << format_double(r.dense_seconds) << '\n';
      }
    }
    if (formats.count(Format::JsonMeta)) write_sidecar("bench", b.params, b.config, formats);
  }
  return 0;
}

std::string value_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned() || v.is_number_integer()) return v.dump();
  if (v.is_number()) return format_double(v.get<double>());
  throw UsageError("unsupported parameter value in sidecar: " + v.dump());
}

std::vector<std::string> replay_args(const std::string& sidecar, const std::string& out) {
  std::ifstream in(sidecar);
  if (!in) throw Error("cannot open sidecar " + sidecar);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed sidecar: ") + e.what());
  }
  std::vector<std::string> args{j.at("subcommand").get<std::string>()};
  for (const auto& [k, v] : j.at("params").items()) {
    args.push_back("--" + k);
    args.push_back(value_text(v));
  }
  args.push_back("--seed");
  args.push_back(value_text(j.at("seed")));
  if (j.contains("realizations")) {
    args.push_back("--realizations");
    args.push_back(value_text(j["realizations"]));
  }
  if (j.contains("formats")) {
    std::string f;
    for (const auto& x : j["formats"]) f += (f.empty() ? "" : ",") + x.get<std::string>();
    args.push_back("--formats");
    args.push_back(f);
  }
  args.push_back("--out");
  args.push_back(out);
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"spatialgen: spatial stochastic simulation"};
  app.name("spatialgen");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::deque<Bound> bound;
  for (const auto& cmd : commands()) {
    Bound& b = bound.emplace_back();
    b.command = &cmd;
    b.params = cmd.defaults;
    b.app = app.add_subcommand(cmd.name, cmd.help);
    bind_params(b.app, b.params);
    bind_config(b.app, b.config, true);
  }

  Bound& validate = bound.emplace_back();
  validate.params.strings["suite"] = "all";
  validate.app = app.add_subcommand("validate", "run a statistical validation suite");
  bind_params(validate.app, validate.params);
  bind_config(validate.app, validate.config, false);

  Bound& bench = bound.emplace_back();
  bench.params.strings["sizes"] = "16,32,64";
  bench.params.reals["min-seconds"] = 0.2;
  bench.params.ints["dense-max"] = 4096;
  bench.app = app.add_subcommand("bench", "circulant vs dense Cholesky timing");
  bind_params(bench.app, bench.params);
  bind_config(bench.app, bench.config, false);

  std::string sidecar, replay_out;
  CLI::App* replay = app.add_subcommand("replay", "re-run a subcommand from its JSON sidecar");
  replay->add_option("sidecar", sidecar, "sidecar written by an earlier run")->required();
  replay->add_option("--out", replay_out, "output path without extension")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (replay->parsed()) return run(replay_args(sidecar, replay_out));
    for (Bound& b : bound) {
      if (!b.app->parsed()) continue;
      if (b.command) return run_generator(b);
      if (&b == &validate) return run_validate(b);
      return run_bench(b);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args);
}

}  // namespace spatialgen::cli
