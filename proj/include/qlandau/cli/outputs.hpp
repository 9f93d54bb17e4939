#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qlandau/cli/config.hpp"
#include "qlandau/core/state.hpp"
#include "qlandau/wigner/wigner.hpp"

namespace qlandau::cli {

inline constexpr int timeseries_schema = 1;
inline constexpr int final_state_schema = 1;

/// t,mass,energy,l2,absphi_k1,...,absphi_kK
std::string timeseries_header(std::size_t modes);
void write_timeseries(const std::filesystem::path& file, const DiagnosticsSeries& series);

/// Cells of a CSV file with a header line; throws on a ragged body.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;  ///< per column
  /// Throws if the column is missing or holds a non-numeric cell.
  std::vector<double> column(const std::string& name) const;
  const std::vector<std::string>& text(const std::string& name) const;
};
CsvTable read_csv(const std::filesystem::path& file);

/// final_state.bin, little-endian:
///   char[4] "QWIG", u32 version, u32 nx, u32 nv, f64 L, f64 v_max, f64 t,
///   then nx*nv f64 w(x_i, v_m) at offset 40, index i*nv + m.
void write_final_state(const std::filesystem::path& file, const WignerState& w, double t);
WignerState read_final_state(const std::filesystem::path& file, double* t = nullptr);

/// Library and build versions for the manifest.
std::string versions_json();

void write_manifest(const std::filesystem::path& file, const RunConfig& config, const std::string& command,
                    const std::vector<std::string>& files, const std::vector<std::string>& warnings = {});

void write_plot_script(const std::filesystem::path& file, std::size_t modes);

}  // namespace qlandau::cli
