#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlandau/core/error.hpp"
#include "qlandau/core/fft.hpp"
#include "qlandau/schrodinger/schrodinger.hpp"

namespace qlandau {

std::vector<double> WaveEnsemble::density() const {
  std::vector<double> n(nx, 0.0);
  for (std::size_t a = 0; a < psis.size(); ++a) {
    for (std::size_t i = 0; i < nx; ++i) n[i] += probs[a] * std::norm(psis[a][i]);
  }
  for (auto& v : n) v *= scale;
  return n;
}

double WaveEnsemble::total_mass() const {
  double s = 0.0;
  for (double v : density()) s += v;
  return s * dx();
}

double WaveEnsemble::norm2(std::size_t a) const {
  double s = 0.0;
  for (const auto& z : psis.at(a)) s += std::norm(z);
  return s * dx();
}

void WaveEnsemble::validate() const {
  require(nx >= 2 && is_power_of_two(nx), "WaveEnsemble: nx must be a power of two");
  require(box_length > 0.0, "WaveEnsemble: box length must be positive");
  require(psis.size() == probs.size() && !psis.empty(), "WaveEnsemble: psis and probs differ in size");
  double total = 0.0;
  for (std::size_t a = 0; a < psis.size(); ++a) {
    require(psis[a].size() == nx, "WaveEnsemble: member size differs from nx");
    require(probs[a] >= 0.0, "WaveEnsemble: negative probability");
    total += probs[a];
  }
  require(std::abs(total - 1.0) <= 1e-12, "WaveEnsemble: probabilities do not sum to 1");
}

double aligned_dv(const PhysicalParams& params) {
  require(params.hbar() > 0.0, "aligned_dv: hbar must be > 0");
  return std::numbers::pi * params.hbar() / (params.mass() * params.box_length());
}

PhaseSpaceGrid aligned_grid(std::size_t nx, std::size_t nv, const PhysicalParams& params) {
  return make_grid(nx, nv, params.box_length(), 0.5 * static_cast<double>(nv) * aligned_dv(params));
}

WaveEnsemble thermal_ensemble(const PhaseSpaceGrid& grid, const PhysicalParams& params,
                              const std::function<double(double)>& profile, const ThermalOptions& opts) {
  require(params.hbar() > 0.0, "thermal_ensemble: hbar must be > 0");
  require(opts.mode >= 0, "thermal_ensemble: mode must be >= 0");
  const double L = params.box_length();
  const double dv = aligned_dv(params);
  require(std::abs(grid.dv() - dv) <= 1e-12 * dv && std::abs(grid.box_length() - L) <= 1e-12 * L,
          "thermal_ensemble: grid is not aligned with the box harmonics");

  WaveEnsemble ens;
  ens.nx = opts.nx_sp != 0 ? opts.nx_sp : std::max(grid.nv(), grid.nx());
  ens.box_length = L;
  require(is_power_of_two(ens.nx) && ens.nx % grid.nx() == 0,
          "thermal_ensemble: nx_sp must be a power-of-two multiple of nx");

  // Member a has momenta a, a +- mode; its widest pure-pair velocity is
  // 2 (|a| + mode) dv, which must stay strictly inside v_max = nv dv / 2.
  const long margin = (opts.epsilon != 0.0 ? opts.mode : 0) + 2;
  long a_max = static_cast<long>(grid.nv() / 4) - margin;
  a_max = std::min(a_max, static_cast<long>(ens.nx / 2) - margin - 1);
  if (opts.max_states != 0) a_max = std::min(a_max, static_cast<long>((opts.max_states - 1) / 2));
  if (a_max < 0) fail(ErrorKind::resolution, "thermal_ensemble: velocity window holds no momentum state");

  const double k1 = 2.0 * std::numbers::pi * opts.mode / L;
  double total = 0.0;
  for (long a = -a_max; a <= a_max; ++a) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(a) / L;
    const double p = profile(params.hbar() * k / params.mass());
    require(std::isfinite(p) && p >= 0.0, "thermal_ensemble: profile must be finite and non-negative");
    if (p == 0.0) continue;
    std::vector<cplx> psi(ens.nx);
    double norm = 0.0;
    for (std::size_t i = 0; i < ens.nx; ++i) {
      const double x = static_cast<double>(i) * ens.dx();
      psi[i] = std::polar(1.0, k * x) * (1.0 + 0.5 * opts.epsilon * std::cos(k1 * x));
      norm += std::norm(psi[i]);
    }
    const double c = 1.0 / std::sqrt(norm * ens.dx());
    for (auto& z : psi) z *= c;
    ens.psis.push_back(std::move(psi));
    ens.probs.push_back(p);
    total += p;
  }
  require(total > 0.0, "thermal_ensemble: profile vanishes on every momentum state");
  // Drop members too weakly occupied to matter at double precision.
  const double p_peak = *std::max_element(ens.probs.begin(), ens.probs.end());
  std::size_t kept = 0;
  total = 0.0;
  for (std::size_t a = 0; a < ens.probs.size(); ++a) {
    if (ens.probs[a] < 1e-16 * p_peak) continue;
    if (kept != a) ens.psis[kept] = std::move(ens.psis[a]);
    ens.probs[kept] = ens.probs[a];
    total += ens.probs[a];
    ++kept;
  }
  ens.psis.resize(kept);
  ens.probs.resize(kept);
  for (auto& p : ens.probs) p /= total;
  ens.scale = params.n0() * L;
  ens.validate();
  return ens;
}

void sp_step(WaveEnsemble& ens, const InteractionKernel& kernel, const PhysicalParams& params, double dt) {
  if (params.hbar() <= 0.0) fail(ErrorKind::invalid_argument, "sp_step: hbar == 0 has no Schroedinger dynamics");
  require(std::abs(ens.box_length - params.box_length()) <= 1e-12 * params.box_length(),
          "sp_step: ensemble and params box lengths differ");
  const std::size_t nx = ens.nx;
  const Fft1d fft(nx);
  const double hbar = params.hbar(), m = params.mass();
  std::vector<cplx> half(nx);
  for (std::size_t j = 0; j < nx; ++j) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(signed_index(j, nx)) / ens.box_length;
    half[j] = std::polar(1.0, -hbar * k * k * dt / (4.0 * m));
  }
  ComplexBuffer buf(nx);
  auto kinetic = [&](std::vector<cplx>& psi) {
    std::copy(psi.begin(), psi.end(), buf.data());
    fft.forward(buf.span());
    for (std::size_t j = 0; j < nx; ++j) buf[j] *= half[j];
    fft.inverse(buf.span());
    std::copy(buf.data(), buf.data() + nx, psi.begin());
  };

  for (auto& psi : ens.psis) kinetic(psi);
  const auto phi = poisson_solve(ens.density(), kernel, params).to_real();
  std::vector<cplx> kick(nx);
  for (std::size_t i = 0; i < nx; ++i) kick[i] = std::polar(1.0, params.charge() * phi[i] * dt / hbar);
  for (auto& psi : ens.psis) {
    for (std::size_t i = 0; i < nx; ++i) psi[i] *= kick[i];
    kinetic(psi);
  }
}

WaveEnsemble sp_evolve(WaveEnsemble ens, const InteractionKernel& kernel, const PhysicalParams& params, double dt,
                       std::size_t steps) {
  for (std::size_t s = 0; s < steps; ++s) sp_step(ens, kernel, params, dt);
  return ens;
}

}  // namespace qlandau
