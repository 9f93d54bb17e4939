#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlandau/core/fft.hpp"
#include "qlandau/core/grid.hpp"
#include "qlandau/core/params.hpp"
#include "qlandau/core/state.hpp"

namespace qlandau {

/// Pair interaction generating the self-consistent potential.
///   coulomb : phi'' = (e/eps0)(n - n0)
///   soft    : phi^(j) = W^(j) n^(j), W^(j) = 1/(1 + |j|^gamma), W^(0) = 0
///   none    : phi = 0 (free transport)
/// For the soft variant j is the integer mode index of the box.
struct InteractionKernel {
  enum class Variant { coulomb, soft, none };

  Variant variant = Variant::coulomb;
  double gamma = 1.0;

  static InteractionKernel coulomb() { return {Variant::coulomb, 1.0}; }
  static InteractionKernel soft(double gamma);
  static InteractionKernel none() { return {Variant::none, 1.0}; }

  /// W^(j) for the soft variant (zero for j == 0).
  double soft_weight(long j) const;
  std::string name() const;
};

/// n(x_i) = sum_m w(x_i, v_m) dv.
std::vector<double> density(const WignerState& w);

/// Potential coefficients from a density on nx points. The mean mode and the
/// Nyquist mode are zero, so the result is Hermitian and exactly neutral.
SpectralField poisson_solve(const std::vector<double>& n, const InteractionKernel& kernel,
                            const PhysicalParams& params);

enum class EvolutionMode { linear, nonlinear };

/// Force term Q with dw/dt = -v dw/dx + Q, i.e. (e/m) Theta[phi] w up to the
/// sign fixed by U = -e phi. In the (x, eta) representation
///   Q^ = (i e / hbar) [phi(x + hbar eta/2m) - phi(x - hbar eta/2m)] u,
/// with shifted potentials evaluated spectrally. Requires hbar > 0.
WignerState theta_apply(const SpectralField& phi, const WignerState& w, const PhysicalParams& params);

/// Classical force term -(e/m) phi'(x) dw/dv, velocity derivative spectral.
WignerState classical_force(const SpectralField& phi, const WignerState& w, const PhysicalParams& params);

/// Third-order semiclassical correction (e hbar^2 / 24 m^3) phi''' d^3w/dv^3.
WignerState semiclassical_correction(const SpectralField& phi, const WignerState& w,
                                     const PhysicalParams& params);

struct SemiclassicalResidual {
  double uncorrected = 0.0;  ///< ||Q - Q_classical||_2
  double corrected = 0.0;    ///< ||Q - Q_classical - correction||_2
};

SemiclassicalResidual semiclassical_residual(const SpectralField& phi, const WignerState& w,
                                             const PhysicalParams& params);

/// Exact free transport w^(k,v) <- e^{-i k v dt} w^(k,v).
WignerState step_free(const WignerState& w, double dt);

/// Potential sub-step with a frozen potential.
///   nonlinear: exact unitary phase kick in (x, eta); hbar == 0 uses the
///              classical kick, an exact shift in v.
///   linear   : w <- w + dt Q[phi] w0 with the frozen homogeneous background.
WignerState step_kick(const WignerState& w, const SpectralField& phi, double dt, const PhysicalParams& params,
                      EvolutionMode mode, const WignerState* background = nullptr);

struct EvolutionConfig {
  double dt = 0.05;
  double t_end = 10.0;
  EvolutionMode mode = EvolutionMode::nonlinear;
  std::optional<WignerState> background;  ///< required by linear mode
  double epsilon = 0.0;                   ///< recorded only
  std::size_t cadence = 1;                ///< steps between diagnostic rows
  std::size_t diag_modes = 4;             ///< |phi^(j)| columns for j = 1..diag_modes
  double max_mass_drift = 1e-6;           ///< relative; exceeded -> numerical abort
};

struct DiagnosticsRow {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double l2 = 0.0;
  std::vector<double> abs_phi;  ///< Fourier-series amplitudes |phi^(j)|/nx, j = 1..K
};

struct DiagnosticsSeries {
  std::vector<DiagnosticsRow> rows;
  std::optional<WignerState> final_state;
  std::vector<std::string> warnings;
  double max_imag_residue = 0.0;  ///< largest |Im w| observed after a transform pair

  /// Column j (1-based mode) of |phi^|.
  std::vector<double> abs_phi(std::size_t mode) const;
  std::vector<double> times() const;
};

/// Kinetic plus field energy of a state. The field part is
/// (eps0/2) sum |phi'|^2 dx for Coulomb and -(e/2) sum phi (n - n0) dx
/// otherwise.
double total_energy(const WignerState& w, const SpectralField& phi, const InteractionKernel& kernel,
                    const PhysicalParams& params);

/// Strang-split Wigner-Poisson evolution: free(dt/2), kick(dt), free(dt/2),
/// with the potential recomputed from the density after the first half step.
DiagnosticsSeries evolve(const WignerState& initial, const InteractionKernel& kernel, const PhysicalParams& params,
                         const EvolutionConfig& config);

/// Reusable propagator holding transforms and phase tables for one grid.
/// Not thread-safe; one instance per run.
class WignerPropagator {
 public:
  WignerPropagator(const PhaseSpaceGrid& grid, const PhysicalParams& params);

  const PhaseSpaceGrid& grid() const noexcept { return grid_; }

  /// Loads a real state into the complex workspace.
  void load(const WignerState& w);
  WignerState state() const;

  void free(double dt);
  void kick(const SpectralField& phi, double dt);
  /// w += dt Q[phi] w0, w0 given as the eta-representation of the background.
  void linear_source(const SpectralField& phi, double dt, const ComplexBuffer& background_eta);
  ComplexBuffer eta_representation(const WignerState& w) const;

  std::vector<double> density() const;
  double kinetic_energy() const;
  /// Largest imaginary residue seen since construction; discarded on each transform pair.
  double max_imag_residue() const noexcept { return max_imag_; }

  /// theta(x, eta) = (e/hbar)[phi(x+a) - phi(x-a)] (or (e/m) eta phi' when hbar == 0).
  const std::vector<double>& phase_rate(const SpectralField& phi);

 private:
  void make_real();
  const ComplexBuffer& free_table(double dt);

  PhaseSpaceGrid grid_;
  PhysicalParams params_;
  PhaseSpaceFft fft_;
  ComplexBuffer buf_;
  ComplexBuffer scratch_;
  std::vector<double> shift_sine_;  ///< [k][eta]: 2 sin(k hbar eta / 2m)/hbar, or k eta/m
  std::vector<double> theta_;
  std::vector<double> kinetic_weights_;
  double cached_dt_ = 0.0;
  ComplexBuffer free_table_;
  double max_imag_ = 0.0;
};

}  // namespace qlandau
