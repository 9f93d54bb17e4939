#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlandau/core/params.hpp"
#include "qlandau/core/state.hpp"
#include "qlandau/wigner/wigner.hpp"

namespace qlandau::cli {

/// One documented configuration key.
struct KeySpec {
  std::string section;
  std::string key;
  std::string default_value;
  std::string doc;  ///< meaning and units
};

/// Every accepted key, in manifest order.
const std::vector<KeySpec>& config_schema();

/// Resolved configuration: every schema key has a value (default, file or
/// environment). Values are kept as the strings they were given in, so a
/// manifest round-trips exactly.
class RunConfig {
 public:
  RunConfig();

  /// INI file with [physics] [grid] [kernel] [run] [output] [dispersion] [norms],
  /// or a manifest.json written by a previous run (its "config" object).
  static RunConfig load(const std::string& path);
  static RunConfig defaults() { return RunConfig(); }

  /// QW_<SECTION>_<KEY>=value overrides, e.g. QW_RUN_DT=0.025.
  void apply_environment();
  void set(const std::string& section, const std::string& key, const std::string& value);

  const std::string& get(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key) const;
  std::size_t count(const std::string& section, const std::string& key) const;
  std::vector<double> numbers(const std::string& section, const std::string& key) const;
  std::vector<std::string> words(const std::string& section, const std::string& key) const;

  const std::map<std::string, std::map<std::string, std::string>>& values() const noexcept { return values_; }

  PhysicalParams physics() const;
  PhaseSpaceGrid grid() const;
  InteractionKernel kernel() const;
  /// Homogeneous background sampled on the grid.
  WignerState background() const;
  /// Background with the configured density perturbation.
  WignerState initial_state() const;
  EvolutionConfig evolution() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
};

}  // namespace qlandau::cli
