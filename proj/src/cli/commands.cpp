#include "qlandau/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "json.hpp"
#include "qlandau/analysis/analysis.hpp"
#include "qlandau/cli/outputs.hpp"
#include "qlandau/dispersion/dispersion.hpp"
#include "qlandau/schrodinger/schrodinger.hpp"
#include "qlandau/wigner/wigner.hpp"

namespace qlandau::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::config: return 1;
    case ErrorKind::numerical_abort: return 2;
    case ErrorKind::not_converged: return 3;
    case ErrorKind::resolution: return 4;
  }
  return 1;
}

std::string kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::config: return "config";
    case ErrorKind::numerical_abort: return "numerical_abort";
    case ErrorKind::not_converged: return "not_converged";
    case ErrorKind::resolution: return "resolution";
  }
  return "unknown";
}

namespace {

fs::path prepare_out(const RunConfig* config, const CommandOptions& opts) {
  fs::path dir = opts.out;
  if (dir.empty()) dir = config ? fs::path(config->get("output", "directory")) : fs::path("out");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::config, "cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_json(const fs::path& file, const json& doc) {
  std::ofstream out(file);
  if (!out) fail(ErrorKind::config, "cannot write " + file.string());
  out << doc.dump(2) << '\n';
}

// Runs work(i) for i < n on up to `threads` workers.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& work) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          work(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

bool has_format(const RunConfig& c, const std::string& f) {
  const auto w = c.words("output", "formats");
  for (const auto& x : w) {
    if (x != "csv" && x != "json" && x != "bin" && x != "plot") {
      fail(ErrorKind::config, "[output] formats: unknown format '" + x + "'");
    }
  }
  return std::find(w.begin(), w.end(), f) != w.end();
}

BackgroundProfile profile_of(const RunConfig& c, const PhysicalParams& p) {
  const std::string& b = c.get("physics", "background");
  if (b == "maxwellian") return BackgroundProfile::maxwellian(p);
  if (b == "fermi") return BackgroundProfile::fermi_reduced(p);
  fail(ErrorKind::config, "[physics] background: expected maxwellian or fermi, got '" + b + "'");
}

double H_to_hbar(const PhysicalParams& p, double H) { return H * p.mass() * p.vT() * p.vT() / p.omega_pe(); }

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

int guarded(const std::function<int()>& body, const std::optional<fs::path>& report) {
  std::string reason, message;
  int code = 1;
  try {
    return body();
  } catch (const Error& e) {
    reason = kind_name(e.kind());
    message = e.what();
    code = exit_code(e.kind());
  } catch (const std::exception& e) {
    reason = "internal";
    message = e.what();
  }
  std::cerr << "error (" << reason << "): " << message << '\n';
  if (report) {
    try {
      json doc;
      doc["status"] = "error";
      doc["reason"] = reason;
      doc["message"] = message;
      doc["exit_code"] = code;
      std::error_code ec;
      fs::create_directories(report->parent_path(), ec);
      write_json(*report, doc);
    } catch (...) {
    }
  }
  return code;
}

int run_simulate(const RunConfig& config, const CommandOptions& opts) {
  const PhysicalParams params = config.physics();
  const InteractionKernel kernel = config.kernel();
  const WignerState w0 = config.initial_state();
  const EvolutionConfig evo = config.evolution();
  const bool csv = has_format(config, "csv"), js = has_format(config, "json"), bin = has_format(config, "bin"),
             plot = has_format(config, "plot");
  const fs::path dir = prepare_out(&config, opts);

  const DiagnosticsSeries series = evolve(w0, kernel, params, evo);
  for (const auto& w : series.warnings) std::cerr << "warning: " << w << '\n';

  std::vector<std::string> files;
  if (csv) {
    write_timeseries(dir / "timeseries.csv", series);
    files.push_back("timeseries.csv");
  }
  if (bin && series.final_state) {
    write_final_state(dir / "final_state.bin", *series.final_state, series.rows.back().t);
    files.push_back("final_state.bin");
  }
  if (plot) {
    write_plot_script(dir / "plot.gp", series.rows.empty() ? 0 : series.rows.front().abs_phi.size());
    files.push_back("plot.gp");
  }
  if (js) {
    files.push_back("manifest.json");
    write_manifest(dir / "manifest.json", config, "simulate", files, series.warnings);
  }
  return 0;
}

int run_dispersion(const RunConfig& config, const CommandOptions& opts) {
  const auto ks = config.numbers("dispersion", "k");
  const auto Hs = config.numbers("dispersion", "H");
  const PhysicalParams base = config.physics();
  for (double k : ks) {
    if (!(k > 0.0)) fail(ErrorKind::config, "[dispersion] k values must be > 0");
  }
  for (double H : Hs) {
    if (!(H >= 0.0)) fail(ErrorKind::config, "[dispersion] H values must be >= 0");
  }
  const fs::path dir = prepare_out(&config, opts);

  struct Row {
    double k, H, omega_root = nan(), gamma_root = nan(), omega_bg = nan(), gamma_closed = nan(),
                 gamma_general = nan(), residual = nan();
    std::string flag = "ok";
  };
  std::vector<Row> rows;
  for (double H : Hs) {
    for (double k : ks) rows.push_back({k, H});
  }
  parallel_for(rows.size(), opts.threads, [&](std::size_t i) {
    Row& r = rows[i];
    const PhysicalParams p = base.with_hbar(H_to_hbar(base, r.H));
    const BackgroundProfile prof = profile_of(config, p);
    r.omega_bg = bohm_gross(r.k, p).omega_r;
    try {
      const DispersionPoint root = solve_root(r.k, prof, p);
      r.omega_root = root.omega_r;
      r.gamma_root = root.gamma;
      r.residual = root.residual;
      if (root.flagged) r.flag = "low_frequency";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_converged && e.kind() != ErrorKind::numerical_abort) throw;
      r.flag = "not_converged";
      return;
    }
    r.gamma_closed = damping_closed(r.k, prof, p, r.omega_root).gamma;
    try {
      r.gamma_general = damping_general(r.k, r.omega_root, prof, p).gamma;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::numerical_abort) throw;
    }
  });

  std::ofstream out(dir / "dispersion.csv");
  if (!out) fail(ErrorKind::config, "cannot write " + (dir / "dispersion.csv").string());
  out << "k,H,omega_root,gamma_root,omega_bg,gamma_closed,gamma_general,residual,flag\n";
  std::size_t failed = 0;
  for (const auto& r : rows) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", r.k, r.H, r.omega_root,
                  r.gamma_root, r.omega_bg, r.gamma_closed, r.gamma_general, r.residual, r.flag.c_str());
    out << buf;
    if (r.flag == "not_converged") ++failed;
  }
  out.close();
  if (has_format(config, "json")) write_manifest(dir / "manifest.json", config, "dispersion", {"dispersion.csv"});
  if (failed == rows.size()) fail(ErrorKind::not_converged, "dispersion: no root converged");
  return 0;
}

int run_validate(const ValidateRequest& req, const CommandOptions& opts) {
  auto scenarios = req.scenarios.empty() ? cross_validation_scenarios() : req.scenarios;
  const auto known = cross_validation_scenarios();
  for (const auto& s : scenarios) {
    if (std::find(known.begin(), known.end(), s) == known.end()) fail(ErrorKind::config, "unknown scenario '" + s + "'");
  }
  if (req.max_level < 0 || req.max_level > 2) fail(ErrorKind::config, "validate: level must lie in [0, 2]");
  const fs::path dir = prepare_out(nullptr, opts);

  struct Job {
    std::string scenario;
    int level;
    CrossValidationReport report;
  };
  std::vector<Job> jobs;
  for (const auto& s : scenarios) {
    for (int l = 0; l <= req.max_level; ++l) jobs.push_back({s, l, {}});
  }
  parallel_for(jobs.size(), opts.threads, [&](std::size_t i) { jobs[i].report = cross_validate(jobs[i].scenario, jobs[i].level); });

  json doc;
  doc["status"] = "ok";
  json checks = json::array();
  bool all = true;
  for (const auto& j : jobs) {
    const auto& r = j.report;
    json c;
    c["check"] = "sup_distance";
    c["scenario"] = r.scenario;
    c["level"] = r.level;
    c["nx"] = r.nx;
    c["nv"] = r.nv;
    c["nx_sp"] = r.nx_sp;
    c["states"] = r.states;
    c["dt"] = r.dt;
    c["w0_sup"] = r.w0_sup;
    c["max_sup_distance"] = r.max_sup();
    c["tolerance"] = r.tolerance;
    c["passed"] = r.passed();
    all = all && r.passed();
    checks.push_back(c);
  }
  for (const auto& s : scenarios) {
    if (s == "free") continue;
    for (int l = 1; l <= req.max_level; ++l) {
      double coarse = 0.0, fine = 0.0;
      for (const auto& j : jobs) {
        if (j.scenario != s) continue;
        if (j.level == l - 1) coarse = j.report.max_sup();
        if (j.level == l) fine = j.report.max_sup();
      }
      json c;
      c["check"] = "refinement";
      c["scenario"] = s;
      c["levels"] = {l - 1, l};
      c["improvement"] = fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity();
      c["required"] = 4.0;
      c["passed"] = fine == 0.0 || coarse / fine >= 4.0;
      all = all && c["passed"].get<bool>();
      checks.push_back(c);
    }
  }
  doc["checks"] = checks;
  doc["passed"] = all;
  write_json(dir / "validate.json", doc);
  return all ? 0 : 5;
}

int run_norms(const RunConfig& config, const CommandOptions& opts) {
  const PhysicalParams params = config.physics();
  const WignerState w0 = config.background();
  StabilityOptions so;
  so.lambda_bar = config.number("norms", "lambda_bar");
  so.mu_bar = config.number("norms", "mu_bar");
  so.b = config.number("norms", "b");
  so.delta0 = config.number("norms", "delta0");
  so.modes.clear();
  for (double l : config.numbers("norms", "modes")) {
    if (l != std::floor(l) || l == 0.0) fail(ErrorKind::config, "[norms] modes must be nonzero integers");
    so.modes.push_back(static_cast<long>(l));
  }
  so.times = config.numbers("norms", "times");
  so.tau_points = config.count("norms", "tau_points");
  const fs::path dir = prepare_out(&config, opts);

  const auto rows = stability_report(w0, params, so);
  json doc;
  doc["status"] = "ok";
  doc["lambda_bar"] = so.lambda_bar;
  doc["mu_bar"] = so.mu_bar;
  doc["b"] = so.b;
  doc["delta0"] = so.delta0;
  double delta = 0.0;
  bool within = true;
  json table = json::array();
  for (const auto& r : rows) {
    table.push_back({{"l", r.l}, {"t", r.t}, {"mean_norm", r.mean_norm}, {"shift_norm", r.shift_norm},
                     {"tau_at_sup", r.tau_at_sup}, {"within", r.within}});
    delta = std::max({delta, r.mean_norm, r.shift_norm});
    within = within && r.within;
  }
  doc["rows"] = table;
  doc["delta"] = delta;
  doc["within"] = within;
  json state = json::object();
  const double lam = so.lambda_bar * (1.0 + so.b);
  for (auto fam : {NormFamily::F, NormFamily::Z, NormFamily::Y, NormFamily::C}) {
    NormSpec s;
    s.family = fam;
    s.lambda = lam;
    s.mu = so.mu_bar;
    const NormResult r = norm_hybrid(w0, s);
    state[family_name(fam)] = {{"value", r.value}, {"truncation_error", r.truncation_error}};
  }
  doc["background_norms"] = state;
  write_json(dir / "norms.json", doc);
  if (has_format(config, "json")) write_manifest(dir / "manifest.json", config, "norms", {"norms.json"});
  return 0;
}

int run_fit(const FitRequest& req, const CommandOptions& opts) {
  const fs::path dir = prepare_out(nullptr, opts);
  std::vector<double> t, s;
  std::string source;
  if (req.synthetic) {
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::ofstream out(dir / "fixture.csv");
    out << "t,absphi_k1\n";
    for (int i = 0; i <= 1200; ++i) {
      const double ti = 0.05 * i;
      double v = std::abs(std::exp(-0.1 * ti) * std::cos(1.2 * ti));
      if (req.noise > 0.0) v *= 1.0 + req.noise * noise(rng);
      t.push_back(ti);
      s.push_back(v);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", ti, v);
      out << buf;
    }
    source = "synthetic";
  } else {
    const CsvTable table = read_csv(req.csv);
    t = table.column("t");
    s = table.column(req.column);
    source = req.csv.string();
  }
  const DecayFit f = fit_decay(t, s, req.t_min, req.t_max);
  json doc;
  doc["status"] = "ok";
  doc["source"] = source;
  doc["column"] = req.synthetic ? "absphi_k1" : req.column;
  doc["t_min"] = req.t_min;
  doc["t_max"] = req.t_max;
  doc["gamma"] = f.gamma;
  doc["omega"] = f.omega;
  doc["goodness"] = f.goodness;
  doc["peaks"] = f.peaks;
  doc["samples"] = f.samples;
  if (req.synthetic) {
    doc["seed"] = opts.seed;
    doc["noise"] = req.noise;
  }
  write_json(dir / "fit.json", doc);
  return 0;
}

}  // namespace qlandau::cli
