#include "qlandau/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "json.hpp"
#include "qlandau/core/error.hpp"
#include "qlandau/dispersion/dispersion.hpp"

namespace qlandau::cli {

const std::vector<KeySpec>& config_schema() {
  static const std::vector<KeySpec> schema = {
      {"physics", "preset", "normalized", "normalized (omega_pe = vT = m = e = eps0 = n0 = 1, hbar = H) or custom"},
      {"physics", "H", "0.1", "quantum parameter hbar omega_pe / (m vT^2); normalized preset"},
      {"physics", "k", "0.5", "fundamental wavenumber of the box, L = 2 pi / k (1/lambda_D)"},
      {"physics", "hbar", "0.1", "custom preset"},
      {"physics", "mass", "1", "custom preset"},
      {"physics", "charge", "1", "custom preset"},
      {"physics", "eps0", "1", "custom preset"},
      {"physics", "n0", "1", "custom preset"},
      {"physics", "vT", "1", "custom preset"},
      {"physics", "mu_over_T", "-20", "reduced chemical potential of the Fermi background"},
      {"physics", "background", "maxwellian", "maxwellian or fermi"},
      {"grid", "nx", "32", "x points, power of two"},
      {"grid", "nv", "256", "v points, power of two"},
      {"grid", "v_max", "8", "velocity half-width (vT)"},
      {"kernel", "variant", "coulomb", "coulomb, soft or none"},
      {"kernel", "gamma", "1", "soft kernel exponent"},
      {"run", "mode", "linear", "linear or nonlinear"},
      {"run", "dt", "0.05", "time step (1/omega_pe)"},
      {"run", "t_end", "40", "final time (1/omega_pe)"},
      {"run", "epsilon", "0.001", "density perturbation amplitude"},
      {"run", "perturbed_mode", "1", "box harmonic of the perturbation"},
      {"run", "cadence", "2", "steps between diagnostic rows"},
      {"run", "diag_modes", "4", "number of |phi| columns"},
      {"run", "max_mass_drift", "1e-6", "relative mass drift that aborts the run"},
      {"output", "directory", "out", "output directory"},
      {"output", "formats", "csv,json,bin,plot", "subset of csv, json, bin, plot"},
      {"dispersion", "k", "0.3,0.35,0.4", "wavenumbers (1/lambda_D)"},
      {"dispersion", "H", "0,0.05,0.1,0.2", "quantum parameters"},
      {"norms", "lambda_bar", "0.05", "analyticity width in v (cycles)"},
      {"norms", "mu_bar", "0", "analyticity width in x (box units)"},
      {"norms", "b", "0.1", "width loss parameter"},
      {"norms", "delta0", "1", "stability threshold"},
      {"norms", "modes", "1,-1", "difference-quotient modes l"},
      {"norms", "times", "1,5,10", "times t of the shifted norm"},
      {"norms", "tau_points", "16", "samples of tau in (0, t]"},
  };
  return schema;
}

namespace {

const KeySpec* find_key(const std::string& section, const std::string& key) {
  for (const auto& k : config_schema()) {
    if (k.section == section && k.key == key) return &k;
  }
  return nullptr;
}

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_number(const std::string& section, const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || trim(text.substr(used)) != "") {
    fail(ErrorKind::config, "[" + section + "] " + key + ": not a number: '" + text + "'");
  }
  return v;
}

}  // namespace

RunConfig::RunConfig() {
  for (const auto& k : config_schema()) values_[k.section][k.key] = k.default_value;
}

void RunConfig::set(const std::string& section, const std::string& key, const std::string& value) {
  if (!find_key(section, key)) fail(ErrorKind::config, "unknown config key [" + section + "] " + key);
  values_[section][key] = trim(value);
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config, "cannot read config file " + path);
  RunConfig c;
  const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  if (json) {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const std::exception& e) {
      fail(ErrorKind::config, path + ": " + e.what());
    }
    const auto& cfg = doc.contains("config") ? doc["config"] : doc;
    if (!cfg.is_object()) fail(ErrorKind::config, path + ": no config object");
    for (const auto& [section, keys] : cfg.items()) {
      if (!keys.is_object()) fail(ErrorKind::config, path + ": section " + section + " is not an object");
      for (const auto& [key, value] : keys.items()) {
        c.set(section, key, value.is_string() ? value.get<std::string>() : value.dump());
      }
    }
    return c;
  }
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    fail(ErrorKind::config, path + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [section, keys] : tree) {
    if (!keys.data().empty()) fail(ErrorKind::config, "config key outside a section: " + section);
    for (const auto& [key, value] : keys) c.set(section, key, value.data());
  }
  return c;
}

void RunConfig::apply_environment() {
  for (const auto& k : config_schema()) {
    std::string name = "QW_" + k.section + "_" + k.key;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (const char* v = std::getenv(name.c_str())) set(k.section, k.key, v);
  }
}

const std::string& RunConfig::get(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  if (s == values_.end() || !s->second.contains(key)) {
    fail(ErrorKind::config, "unknown config key [" + section + "] " + key);
  }
  return s->second.at(key);
}

double RunConfig::number(const std::string& section, const std::string& key) const {
  return parse_number(section, key, get(section, key));
}

std::size_t RunConfig::count(const std::string& section, const std::string& key) const {
  const double v = number(section, key);
  if (v < 0.0 || v != std::floor(v)) {
    fail(ErrorKind::config, "[" + section + "] " + key + ": expected a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> RunConfig::numbers(const std::string& section, const std::string& key) const {
  std::vector<double> out;
  for (const auto& w : split(get(section, key))) out.push_back(parse_number(section, key, w));
  if (out.empty()) fail(ErrorKind::config, "[" + section + "] " + key + ": empty list");
  return out;
}

std::vector<std::string> RunConfig::words(const std::string& section, const std::string& key) const {
  return split(get(section, key));
}

PhysicalParams RunConfig::physics() const {
  const double k = number("physics", "k");
  if (!(k > 0.0)) fail(ErrorKind::config, "[physics] k must be > 0");
  const double L = 2.0 * std::numbers::pi / k;
  const std::string& preset = get("physics", "preset");
  try {
    if (preset == "normalized") return PhysicalParams::normalized(number("physics", "H"), L, number("physics", "mu_over_T"));
    if (preset == "custom") {
      PhysicalParams::Fields f;
      f.hbar = number("physics", "hbar");
      f.mass = number("physics", "mass");
      f.charge = number("physics", "charge");
      f.eps0 = number("physics", "eps0");
      f.n0 = number("physics", "n0");
      f.vT = number("physics", "vT");
      f.mu_over_T = number("physics", "mu_over_T");
      f.box_length = L;
      return PhysicalParams(f);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    fail(ErrorKind::config, std::string("[physics] ") + e.what());
  }
  fail(ErrorKind::config, "[physics] preset: expected normalized or custom, got '" + preset + "'");
}

PhaseSpaceGrid RunConfig::grid() const {
  try {
    return make_grid(count("grid", "nx"), count("grid", "nv"), physics().box_length(), number("grid", "v_max"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    fail(ErrorKind::config, std::string("[grid] ") + e.what());
  }
}

InteractionKernel RunConfig::kernel() const {
  const std::string& v = get("kernel", "variant");
  if (v == "coulomb") return InteractionKernel::coulomb();
  if (v == "none") return InteractionKernel::none();
  if (v == "soft") {
    try {
      return InteractionKernel::soft(number("kernel", "gamma"));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::config) throw;
      fail(ErrorKind::config, std::string("[kernel] ") + e.what());
    }
  }
  fail(ErrorKind::config, "[kernel] variant: expected coulomb, soft or none, got '" + v + "'");
}

WignerState RunConfig::background() const {
  const PhysicalParams p = physics();
  const PhaseSpaceGrid g = grid();
  const std::string& b = get("physics", "background");
  if (b == "maxwellian") return maxwellian_profile(g, p);
  if (b == "fermi") {
    const BackgroundProfile prof = BackgroundProfile::fermi_reduced(p);
    WignerState w(g);
    for (std::size_t i = 0; i < g.nx(); ++i) {
      for (std::size_t m = 0; m < g.nv(); ++m) w(i, m) = p.n0() * prof(g.v(m));
    }
    return w;
  }
  fail(ErrorKind::config, "[physics] background: expected maxwellian or fermi, got '" + b + "'");
}

WignerState RunConfig::initial_state() const {
  const std::size_t mode = count("run", "perturbed_mode");
  if (mode < 1 || mode >= count("grid", "nx") / 2) {
    fail(ErrorKind::config, "[run] perturbed_mode must lie in [1, nx/2)");
  }
  return perturbed(background(), number("run", "epsilon"), static_cast<int>(mode));
}

EvolutionConfig RunConfig::evolution() const {
  EvolutionConfig c;
  const std::string& mode = get("run", "mode");
  if (mode == "linear") {
    c.mode = EvolutionMode::linear;
    c.background = background();
  } else if (mode == "nonlinear") {
    c.mode = EvolutionMode::nonlinear;
  } else {
    fail(ErrorKind::config, "[run] mode: expected linear or nonlinear, got '" + mode + "'");
  }
  c.dt = number("run", "dt");
  c.t_end = number("run", "t_end");
  c.epsilon = number("run", "epsilon");
  c.cadence = count("run", "cadence");
  c.diag_modes = count("run", "diag_modes");
  c.max_mass_drift = number("run", "max_mass_drift");
  if (!(c.dt > 0.0) || !(c.t_end > 0.0) || c.cadence == 0) {
    fail(ErrorKind::config, "[run] dt, t_end and cadence must be positive");
  }
  return c;
}

}  // namespace qlandau::cli
