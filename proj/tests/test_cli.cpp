#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "doctest.h"
#include "approx.hpp"
#include "json.hpp"
#include "qlandau/cli/config.hpp"
#include "qlandau/cli/outputs.hpp"
#include "qlandau/core/error.hpp"

namespace fs = std::filesystem;
using namespace qlandau;

namespace {

const fs::path kWork = fs::path(QLANDAU_TEST_WORKDIR) / "cli";

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + QLANDAU_BIN + std::string(" ") + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

nlohmann::json load_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

fs::path fresh(const std::string& name) {
  const fs::path d = kWork / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const std::string kSmall =
    "[physics]\nH = 0.1\nk = 0.5\n[grid]\nnx = 16\nnv = 64\n[run]\nmode = nonlinear\nt_end = 2\ndt = 0.1\n"
    "epsilon = 0.01\ncadence = 1\ndiag_modes = 3\n";

}  // namespace

TEST_CASE("config parsing") {
  const fs::path d = fresh("config");
  write(d / "a.ini", kSmall);
  const auto c = cli::RunConfig::load((d / "a.ini").string());
  CHECK(c.number("physics", "H") == 0.1);
  CHECK(c.count("grid", "nv") == 64);
  CHECK(c.get("kernel", "variant") == "coulomb");
  CHECK(c.grid().box_length() == Rel(4.0 * std::numbers::pi));
  write(d / "bad.ini", "[grid]\nnxx = 4\n");
  CHECK_THROWS_WITH_AS(cli::RunConfig::load((d / "bad.ini").string()), doctest::Contains("nxx"), Error);
  write(d / "top.ini", "nx = 4\n");
  CHECK_THROWS_AS(cli::RunConfig::load((d / "top.ini").string()), Error);
  write(d / "num.ini", "[run]\ndt = fast\n");
  const auto bad = cli::RunConfig::load((d / "num.ini").string());
  CHECK_THROWS_AS(bad.evolution(), Error);
  for (const auto& k : cli::config_schema()) CHECK(!k.doc.empty());
}

TEST_CASE("simulate writes the documented artifacts") {
  const fs::path d = fresh("simulate");
  write(d / "run.ini", kSmall);
  REQUIRE(run("simulate --config " + (d / "run.ini").string() + " --out " + (d / "a").string()) == 0);
  for (auto f : {"timeseries.csv", "final_state.bin", "manifest.json", "plot.gp"}) CHECK(fs::exists(d / "a" / f));

  const auto table = cli::read_csv(d / "a" / "timeseries.csv");
  CHECK(table.header == std::vector<std::string>{"t", "mass", "energy", "l2", "absphi_k1", "absphi_k2", "absphi_k3"});
  CHECK(table.column("t").size() == 21);
  CHECK_THROWS_AS(table.text("nope"), Error);
  CHECK(table.column("t").back() == Rel(2.0));

  const std::string bin = slurp(d / "a" / "final_state.bin");
  REQUIRE(bin.size() == 40 + 8 * 16 * 64);
  CHECK(bin.substr(0, 4) == "QWIG");
  std::uint32_t u[3];
  std::memcpy(u, bin.data() + 4, sizeof u);
  CHECK(u[0] == 1);
  CHECK(u[1] == 16);
  CHECK(u[2] == 64);
  double h[3];
  std::memcpy(h, bin.data() + 16, sizeof h);
  CHECK(h[0] == Rel(4.0 * std::numbers::pi));
  CHECK(h[1] == 8.0);
  CHECK(h[2] == Rel(2.0));
  double t = 0.0;
  const auto w = cli::read_final_state(d / "a" / "final_state.bin", &t);
  double first;
  std::memcpy(&first, bin.data() + 40, sizeof first);
  CHECK(w(0, 0) == first);
  CHECK(w.mass() == Rel(table.column("mass").back()).epsilon(1e-14));

  const auto m = load_json(d / "a" / "manifest.json");
  CHECK(m["command"] == "simulate");
  CHECK(m["config"]["grid"]["nv"] == "64");
  CHECK(m["schema"]["final_state"] == 1);
  CHECK(m["versions"].contains("fftw"));

  REQUIRE(run("simulate --config " + (d / "a" / "manifest.json").string() + " --out " + (d / "b").string()) == 0);
  CHECK(slurp(d / "a" / "timeseries.csv") == slurp(d / "b" / "timeseries.csv"));
  CHECK(slurp(d / "a" / "final_state.bin") == slurp(d / "b" / "final_state.bin"));
}

TEST_CASE("environment overrides and exit codes") {
  const fs::path d = fresh("env");
  write(d / "run.ini", kSmall);
  const std::string base = "simulate --config " + (d / "run.ini").string() + " --out " + (d / "o").string();
  CHECK(run(base, "QW_RUN_T_END=1") == 0);
  CHECK(cli::read_csv(d / "o" / "timeseries.csv").column("t").back() == Rel(1.0));
  CHECK(run(base, "QW_RUN_DT=abc") == 1);
  const auto err = load_json(d / "o" / "simulate.json");
  CHECK(err["status"] == "error");
  CHECK(err["exit_code"] == 1);
  write(d / "typo.ini", "[grid]\nn_x = 16\n");
  CHECK(run("simulate --config " + (d / "typo.ini").string() + " --out " + (d / "o").string()) == 1);
  CHECK(load_json(d / "o" / "simulate.json")["message"].get<std::string>().find("n_x") != std::string::npos);
  CHECK(run("fit --csv " + (d / "missing.csv").string() + " --out " + (d / "o").string()) == 1);
  CHECK(run("validate --scenario nothing --out " + (d / "o").string()) == 1);
  CHECK(run("frobnicate") == 1);
  write(d / "drift.ini", kSmall + "max_mass_drift = 1e-30\n");
  CHECK(run("simulate --config " + (d / "drift.ini").string() + " --out " + (d / "o").string()) == 2);
  CHECK(load_json(d / "o" / "simulate.json")["reason"] == "numerical_abort");
}

TEST_CASE("fit on the synthetic fixture") {
  const fs::path d = fresh("fit");
  REQUIRE(run("fit --synthetic --out " + d.string()) == 0);
  const auto f = load_json(d / "fit.json");
  CHECK(f["gamma"].get<double>() == Rel(0.1).epsilon(1e-3));
  CHECK(f["omega"].get<double>() == Rel(1.2).epsilon(1e-3));
  REQUIRE(run("fit --synthetic --noise 0.01 --seed 4 --out " + (d / "n").string()) == 0);
  REQUIRE(run("fit --synthetic --noise 0.01 --seed 4 --out " + (d / "m").string()) == 0);
  CHECK(slurp(d / "n" / "fixture.csv") == slurp(d / "m" / "fixture.csv"));
  const auto n = load_json(d / "n" / "fit.json");
  CHECK(n["gamma"].get<double>() == Rel(0.1).epsilon(0.05));
  CHECK(n["goodness"].get<double>() < 1.0);
}

TEST_CASE("dispersion table") {
  const fs::path d = fresh("dispersion");
  REQUIRE(run("dispersion --k 0.3,0.4 --H 0.05 --threads 2 --out " + d.string()) == 0);
  const auto t = cli::read_csv(d / "dispersion.csv");
  CHECK(t.header == std::vector<std::string>{"k", "H", "omega_root", "gamma_root", "omega_bg", "gamma_closed",
                                             "gamma_general", "residual", "flag"});
  CHECK(t.column("k").size() == 2);
  for (double r : t.column("residual")) CHECK(r < 1e-10);
  for (const auto& f : t.text("flag")) CHECK(f == "ok");
  CHECK_THROWS_AS(t.column("flag"), Error);
}

TEST_CASE("linear Landau preset matches the dispersion root") {
  const fs::path d = fresh("landau");
  const std::string cfg = std::string(QLANDAU_SOURCE_DIR) + "/configs/landau_linear.ini";
  REQUIRE(run("simulate --config " + cfg + " --out " + (d / "sim").string()) == 0);
  REQUIRE(run("fit --csv " + (d / "sim" / "timeseries.csv").string() + " --t-min 5 --t-max 45 --out " +
              (d / "fit").string()) == 0);
  REQUIRE(run("dispersion --config " + cfg + " --k 0.35 --H 0.01 --out " + (d / "disp").string()) == 0);
  const double fitted = load_json(d / "fit" / "fit.json")["gamma"].get<double>();
  const double root = cli::read_csv(d / "disp" / "dispersion.csv").column("gamma_root").front();
  CHECK(fitted == Rel(root).epsilon(0.10));
}

TEST_CASE("norms report") {
  const fs::path d = fresh("norms");
  write(d / "n.ini", "[grid]\nnx = 16\nnv = 128\n[norms]\ntimes = 1\ntau_points = 4\n");
  REQUIRE(run("norms --config " + (d / "n.ini").string() + " --out " + d.string()) == 0);
  const auto n = load_json(d / "norms.json");
  CHECK(n["lambda_bar"] == 0.05);
  CHECK(n["b"] == 0.1);
  CHECK(n["rows"].size() == 2);
  for (const auto& r : n["rows"]) CHECK(std::isfinite(r["shift_norm"].get<double>()));
}
