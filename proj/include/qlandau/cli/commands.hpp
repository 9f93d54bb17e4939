#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qlandau/cli/config.hpp"
#include "qlandau/core/error.hpp"

namespace qlandau::cli {

/// 0 success, 1 configuration or argument error, 2 numerical abort,
/// 3 root finding did not converge, 4 resolution too coarse; validate returns 5
/// when a check fails.
int exit_code(ErrorKind kind);
std::string kind_name(ErrorKind kind);

struct CommandOptions {
  std::filesystem::path out;  ///< empty: [output] directory
  std::size_t threads = 1;
  std::uint64_t seed = 0;
};

/// Runs `body`, mapping library errors to exit codes. On failure the message goes to
/// stderr and, when `report` is set, a {"status": "error", ...} document is written there.
int guarded(const std::function<int()>& body, const std::optional<std::filesystem::path>& report = {});

int run_simulate(const RunConfig& config, const CommandOptions& opts);
int run_dispersion(const RunConfig& config, const CommandOptions& opts);

struct ValidateRequest {
  std::vector<std::string> scenarios;  ///< empty: all
  int max_level = 1;
};
int run_validate(const ValidateRequest& req, const CommandOptions& opts);

int run_norms(const RunConfig& config, const CommandOptions& opts);

struct FitRequest {
  std::filesystem::path csv;  ///< ignored for the synthetic fixture
  std::string column = "absphi_k1";
  double t_min = -1e300;
  double t_max = 1e300;
  bool synthetic = false;  ///< |e^{-0.1 t} cos 1.2 t| sampled at dt = 0.05 on [0, 60]
  double noise = 0.0;      ///< relative Gaussian noise on the fixture (uses the seed)
};
int run_fit(const FitRequest& req, const CommandOptions& opts);

}  // namespace qlandau::cli
