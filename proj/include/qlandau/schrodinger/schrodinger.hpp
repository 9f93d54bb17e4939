#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qlandau/core/grid.hpp"
#include "qlandau/core/params.hpp"
#include "qlandau/core/state.hpp"
#include "qlandau/wigner/wigner.hpp"

namespace qlandau {

/// Mixed state sum_a p_a |psi_a><psi_a| on an nx-point periodic grid.
/// Density n(x) = scale * sum_a p_a |psi_a(x)|^2.
struct WaveEnsemble {
  std::size_t nx = 0;
  double box_length = 0.0;
  std::vector<std::vector<cplx>> psis;
  std::vector<double> probs;
  double scale = 1.0;

  std::size_t size() const noexcept { return psis.size(); }
  double dx() const noexcept { return box_length / static_cast<double>(nx); }
  std::vector<double> density() const;
  double total_mass() const;
  /// int |psi_a|^2 dx.
  double norm2(std::size_t a) const;
  /// Throws on inconsistent sizes, negative probabilities or sum p != 1.
  void validate() const;
};

/// Velocity spacing that puts every pair midpoint (k_a + k_b) hbar / 2m of
/// box harmonics on a grid point: dv = pi hbar / (m L).
double aligned_dv(const PhysicalParams& params);

/// Phase-space grid with the aligned velocity spacing, v_max = nv dv / 2.
PhaseSpaceGrid aligned_grid(std::size_t nx, std::size_t nv, const PhysicalParams& params);

struct ThermalOptions {
  std::size_t nx_sp = 0;     ///< Schroedinger grid points; 0 -> max(nv, nx)
  std::size_t max_states = 0;  ///< 0 -> every momentum state fitting the velocity window
  double epsilon = 0.0;      ///< psi_a <- psi_a (1 + (eps/2) cos(k_l x)), then renormalized
  int mode = 1;
};

/// Thermal mixture of plane waves e^{i k_a x}/sqrt(L) with p_a proportional to
/// profile(hbar k_a / m), sized for the velocity window of `grid`.
WaveEnsemble thermal_ensemble(const PhaseSpaceGrid& grid, const PhysicalParams& params,
                              const std::function<double(double)>& profile, const ThermalOptions& opts = {});

/// Strang step: kinetic(dt/2), potential phase exp(+i e phi dt / hbar), kinetic(dt/2).
void sp_step(WaveEnsemble& ens, const InteractionKernel& kernel, const PhysicalParams& params, double dt);
WaveEnsemble sp_evolve(WaveEnsemble ens, const InteractionKernel& kernel, const PhysicalParams& params, double dt,
                       std::size_t steps);

/// Discrete Wigner transform on `grid`:
///   w(x, v) = (1/2pi) int rho(x + hbar eta/2m, x - hbar eta/2m) e^{-i v eta} d eta
/// with shifts evaluated spectrally. nx_sp must be a multiple of grid.nx().
/// Throws ErrorKind::resolution if any member carries momentum with
/// hbar |k| / m >= v_max.
WignerState wigner_of(const WaveEnsemble& ens, const PhaseSpaceGrid& grid, const PhysicalParams& params);

struct CrossValidationReport {
  std::string scenario;
  int level = 0;
  std::size_t nx = 0, nv = 0, nx_sp = 0, states = 0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<double> sup_distance;
  std::vector<double> l2_distance;
  double w0_sup = 0.0;
  double tolerance = 0.0;  ///< absolute, on the sup distance
  double max_sup() const;
  bool passed() const { return max_sup() < tolerance; }
};

/// Named presets: "free" (no field) and "perturbed" (Coulomb, single-mode
/// perturbation of a thermal mixture). `level` 0 is the reference
/// resolution; each level halves dt and doubles nx and nv.
CrossValidationReport cross_validate(const std::string& scenario, int level = 0);
std::vector<std::string> cross_validation_scenarios();

}  // namespace qlandau
