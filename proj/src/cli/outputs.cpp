#include "qlandau/cli/outputs.hpp"

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include <boost/version.hpp>
#include <fftw3.h>

#include "json.hpp"
#include "qlandau/core/error.hpp"
#include "qlandau/kernels/kernels.hpp"

namespace qlandau::cli {

static_assert(std::endian::native == std::endian::little, "final_state.bin writer assumes a little-endian host");

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& file, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(file, mode);
  if (!out) fail(ErrorKind::config, "cannot write " + file.string());
  return out;
}

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T take(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

std::string timeseries_header(std::size_t modes) {
  std::string h = "t,mass,energy,l2";
  for (std::size_t j = 1; j <= modes; ++j) h += ",absphi_k" + std::to_string(j);
  return h;
}

void write_timeseries(const std::filesystem::path& file, const DiagnosticsSeries& series) {
  auto out = open_out(file);
  const std::size_t modes = series.rows.empty() ? 0 : series.rows.front().abs_phi.size();
  out << timeseries_header(modes) << '\n';
  for (const auto& r : series.rows) {
    out << fmt(r.t) << ',' << fmt(r.mass) << ',' << fmt(r.energy) << ',' << fmt(r.l2);
    for (double a : r.abs_phi) out << ',' << fmt(a);
    out << '\n';
  }
}

const std::vector<std::string>& CsvTable::text(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return cells[i];
  }
  fail(ErrorKind::config, "csv has no column '" + name + "'");
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const auto& col = text(name);
  std::vector<double> out;
  out.reserve(col.size());
  for (std::size_t r = 0; r < col.size(); ++r) {
    char* end = nullptr;
    const double v = std::strtod(col[r].c_str(), &end);
    if (end == col[r].c_str() || *end != '\0') {
      fail(ErrorKind::config, "csv column '" + name + "': bad number '" + col[r] + "' in row " + std::to_string(r + 1));
    }
    out.push_back(v);
  }
  return out;
}

CsvTable read_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail(ErrorKind::config, "cannot read " + file.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::config, file.string() + ": empty file");
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) t.header.push_back(cell);
  t.cells.resize(t.header.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::size_t col = 0;
    for (std::string cell; std::getline(ls, cell, ','); ++col) {
      if (col >= t.header.size()) fail(ErrorKind::config, file.string() + ": too many cells on line " + std::to_string(row));
      t.cells[col].push_back(cell);
    }
    if (col != t.header.size()) fail(ErrorKind::config, file.string() + ": short line " + std::to_string(row));
  }
  return t;
}

void write_final_state(const std::filesystem::path& file, const WignerState& w, double t) {
  auto out = open_out(file, std::ios::out | std::ios::binary);
  const auto& g = w.grid();
  out.write("QWIG", 4);
  put<std::uint32_t>(out, final_state_schema);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.nv()));
  put<double>(out, g.box_length());
  put<double>(out, g.v_max());
  put<double>(out, t);
  out.write(reinterpret_cast<const char*>(w.values().data()),
            static_cast<std::streamsize>(w.values().size() * sizeof(double)));
}

WignerState read_final_state(const std::filesystem::path& file, double* t) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(ErrorKind::config, "cannot read " + file.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "QWIG", 4) != 0) fail(ErrorKind::config, file.string() + ": bad magic");
  const auto version = take<std::uint32_t>(in);
  if (version != final_state_schema) fail(ErrorKind::config, file.string() + ": unsupported version");
  const auto nx = take<std::uint32_t>(in);
  const auto nv = take<std::uint32_t>(in);
  const double L = take<double>(in);
  const double vmax = take<double>(in);
  const double time = take<double>(in);
  const auto g = make_grid(nx, nv, L, vmax);
  std::vector<double> v(g.size());
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!in) fail(ErrorKind::config, file.string() + ": truncated");
  if (t) *t = time;
  return WignerState(g, std::move(v));
}

std::string versions_json() {
  nlohmann::json v;
  v["qlandau"] = "0.1.0";
  v["fftw"] = std::string(fftw_version);
  v["boost"] = BOOST_LIB_VERSION;
  v["compiler"] = __VERSION__;
  v["simd"] = kernels::active().name;
  return v.dump();
}

void write_manifest(const std::filesystem::path& file, const RunConfig& config, const std::string& command,
                    const std::vector<std::string>& files, const std::vector<std::string>& warnings) {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["schema"] = {{"timeseries", timeseries_schema}, {"final_state", final_state_schema}};
  m["versions"] = nlohmann::json::parse(versions_json());
  nlohmann::ordered_json cfg;
  for (const auto& k : config_schema()) cfg[k.section][k.key] = config.get(k.section, k.key);
  m["config"] = cfg;
  if (command == "simulate") {
    const auto g = config.grid();
    m["grid"] = {{"nx", g.nx()}, {"nv", g.nv()}, {"box_length", g.box_length()}, {"v_max", g.v_max()},
                 {"dx", g.dx()}, {"dv", g.dv()}};
  }
  m["files"] = files;
  m["warnings"] = warnings;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  m["timestamp"] = stamp;
  open_out(file) << m.dump(2) << '\n';
}

void write_plot_script(const std::filesystem::path& file, std::size_t modes) {
  auto out = open_out(file);
  out << "# gnuplot -persist plot.gp\n"
         "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set logscale y\n"
         "set xlabel 't'\n"
         "set ylabel '|phi_k|'\n"
         "plot ";
  for (std::size_t j = 1; j <= modes; ++j) {
    out << (j > 1 ? ", " : "") << "'timeseries.csv' using 1:" << 4 + j << " with lines";
  }
  out << '\n';
}

}  // namespace qlandau::cli
