#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qlandau/cli/commands.hpp"

using namespace qlandau;
using namespace qlandau::cli;

namespace {

std::optional<std::string> env(const char* name) {
  if (const char* v = std::getenv(name)) return std::string(v);
  return std::nullopt;
}

RunConfig load_config(const std::string& path) {
  RunConfig c = path.empty() ? RunConfig::defaults() : RunConfig::load(path);
  c.apply_environment();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Landau damping: Wigner-Poisson runs, dispersion tables and analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path = env("QW_CONFIG").value_or("");
  std::string out_dir = env("QW_OUT").value_or("");
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  if (auto t = env("QW_THREADS")) threads = std::stoul(*t);
  if (auto s = env("QW_SEED")) seed = std::stoull(*s);

  app.add_option("--config", config_path, "INI config or a manifest.json from an earlier run (QW_CONFIG)");
  app.add_option("--out", out_dir, "output directory, overrides [output] directory (QW_OUT)");
  app.add_option("--threads", threads, "workers for parameter sweeps (QW_THREADS)")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for noise fixtures (QW_SEED)");

  auto* simulate = app.add_subcommand("simulate", "evolve the configured initial state");
  auto* dispersion = app.add_subcommand("dispersion", "root, Bohm-Gross and damping-rate table over [dispersion] k x H");
  std::string k_list, H_list;
  dispersion->add_option("--k", k_list, "comma-separated wavenumbers, overrides [dispersion] k");
  dispersion->add_option("--H", H_list, "comma-separated quantum parameters, overrides [dispersion] H");

  auto* validate = app.add_subcommand("validate", "Wigner vs Schrodinger ensemble cross-validation");
  ValidateRequest vreq;
  validate->add_option("--scenario", vreq.scenarios, "free and/or perturbed (default both)");
  validate->add_option("--level", vreq.max_level, "highest refinement level, 0..2")->check(CLI::Range(0, 2));

  auto* norms = app.add_subcommand("norms", "stability-condition report for the configured background");

  auto* fit = app.add_subcommand("fit", "fit an exponentially decaying oscillation to a CSV column");
  FitRequest freq;
  std::string csv;
  fit->add_option("--csv", csv, "input CSV with a t column");
  fit->add_option("--column", freq.column, "column to fit");
  fit->add_option("--t-min", freq.t_min, "window start");
  fit->add_option("--t-max", freq.t_max, "window end");
  fit->add_flag("--synthetic", freq.synthetic, "fit the built-in |e^{-0.1t} cos 1.2t| fixture");
  fit->add_option("--noise", freq.noise, "relative Gaussian noise on the fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CommandOptions opts{out_dir, threads, seed};
  const auto report = [&](const std::string& name) -> std::optional<std::filesystem::path> {
    return std::filesystem::path(out_dir.empty() ? "out" : out_dir) / name;
  };

  if (simulate->parsed()) {
    if (config_path.empty()) {
      std::cerr << "simulate: --config is required\n";
      return 1;
    }
    return guarded([&] { return run_simulate(load_config(config_path), opts); }, report("simulate.json"));
  }
  if (dispersion->parsed()) {
    return guarded([&] {
      RunConfig c = load_config(config_path);
      if (!k_list.empty()) c.set("dispersion", "k", k_list);
      if (!H_list.empty()) c.set("dispersion", "H", H_list);
      return run_dispersion(c, opts);
    }, report("dispersion.json"));
  }
  if (validate->parsed()) return guarded([&] { return run_validate(vreq, opts); }, report("validate.json"));
  if (norms->parsed()) {
    return guarded([&] { return run_norms(load_config(config_path), opts); }, report("norms.json"));
  }
  if (fit->parsed()) {
    freq.csv = csv;
    if (csv.empty() && !freq.synthetic) {
      std::cerr << "fit: give --csv or --synthetic\n";
      return 1;
    }
    return guarded([&] { return run_fit(freq, opts); }, report("fit.json"));
  }
  return 1;
}
