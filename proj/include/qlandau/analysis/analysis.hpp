#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qlandau/core/params.hpp"
#include "qlandau/core/state.hpp"

namespace qlandau {

/// Fourier data of f(x, v) on the box, in box units x_hat = x / L:
///   f^(l, v)    = (1/L) int f(x, v) e^{-2 pi i l x / L} dx      (x-mode l)
///   f~(l, eta)  = int f^(l, v) e^{-2 pi i eta v} dv            (eta in cycles)
/// Both are held on the grid; eta_j = j / (nv dv).
class SpectralData {
 public:
  /// Data from a phase-space state (x transform divided by nx).
  static SpectralData from_state(const WignerState& w);
  /// Data given directly by f^(l, v_m), FFT order in l, v ascending from -v_max.
  static SpectralData from_modes(std::size_t nx, std::size_t nv, double box_length, double v_max,
                                 std::vector<cplx> modes);
  /// Data given directly by f~(l, eta_j), both in FFT order.
  static SpectralData from_eta(std::size_t nx, std::size_t nv, double box_length, double v_max,
                               std::vector<cplx> eta_modes);
  /// A function of x alone, given on nx points. Norms treat it without a v extent.
  static SpectralData from_x_field(const std::vector<double>& values, double box_length, std::size_t nv = 16);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t nv() const noexcept { return nv_; }
  double box_length() const noexcept { return L_; }
  double v_max() const noexcept { return v_max_; }
  double dv() const noexcept { return 2.0 * v_max_ / static_cast<double>(nv_); }
  double deta() const noexcept { return 1.0 / (static_cast<double>(nv_) * dv()); }
  double v(std::size_t m) const noexcept { return -v_max_ + static_cast<double>(m) * dv(); }
  /// Signed eta_j in cycles; the Nyquist bin keeps its (negative) value.
  double eta(std::size_t j) const noexcept;
  long mode(std::size_t l) const noexcept;

  bool x_only() const noexcept { return x_only_; }

  const std::vector<cplx>& modes() const noexcept { return fhat_; }
  const std::vector<cplx>& eta_modes() const noexcept { return ftilde_; }
  cplx fhat(std::size_t l, std::size_t m) const noexcept { return fhat_[l * nv_ + m]; }
  cplx ftilde(std::size_t l, std::size_t j) const noexcept { return ftilde_[l * nv_ + j]; }

  /// Inverse eta transform of mult(l, eta_j) f~(l, eta_j) for one mode l: values on the v grid.
  std::vector<cplx> v_profile(std::size_t l, const std::vector<cplx>& eta_row) const;

  SpectralData scaled(cplx c) const;
  /// x-average, i.e. the l = 0 row as an x-independent field.
  SpectralData x_mean() const;
  /// int f dv as a function of x alone.
  SpectralData density() const;

 private:
  SpectralData() = default;
  void fill_eta();
  void fill_modes();
  std::size_t nx_ = 0, nv_ = 0;
  double L_ = 0.0, v_max_ = 0.0;
  bool x_only_ = false;
  std::vector<cplx> fhat_;
  std::vector<cplx> ftilde_;
};

enum class NormFamily { C, F, Z, Y };
std::string family_name(NormFamily f);

struct NormSpec {
  NormFamily family = NormFamily::F;
  double lambda = 0.0;  ///< analyticity width in v (cycles)
  double mu = 0.0;      ///< analyticity width in x (box units)
  double tau = 0.0;     ///< time shift; enters as eta + tau l / L
  int p = 1;            ///< 1 or infinity (any value <= 0 means infinity)
  std::optional<std::size_t> max_mode;  ///< |l| cut; default all resolved modes
  std::size_t max_order = 32;           ///< derivative-series cap (C, Z)
  double boundary_tolerance = 1e-6;     ///< relative weighted mass allowed in the outermost bins
};

struct NormResult {
  double value = 0.0;
  double truncation_error = 0.0;  ///< series tail (ratio test) plus outermost-bin weight
  std::size_t max_mode = 0;
  std::size_t max_order = 0;
};

/// C : sum_{m,n <= N} lambda^n mu^m / (n! m!) || d_x^m (d_v + (tau/L) d_x)^n f ||_{L^p}
/// F : sum_l int |f~(l, eta)| e^{2 pi lambda |eta + tau l/L|} e^{2 pi mu |l|} d eta
/// Z : sum_l e^{2 pi mu |l|} sum_{n <= N} lambda^n / n! || (d_v + 2 pi i tau l / L)^n f^(l, .) ||_{L^p_v}
/// Y : sup_{l, eta} e^{2 pi mu |l|} e^{2 pi lambda |eta + tau l/L|} |f~(l, eta)|
/// Throws ErrorKind::resolution naming the offending bin if the weighted
/// data is not negligible at the grid boundary.
NormResult norm_hybrid(const SpectralData& f, const NormSpec& spec);
NormResult norm_hybrid(const WignerState& w, const NormSpec& spec);

/// Quantum difference quotient of the background,
///   dw0(x, v) = [w0(x, v - q) - w0(x, v + q)] / (2q),  q = hbar kappa_l / 2m,  kappa_l = 2 pi l / L,
/// shifts applied spectrally.
WignerState delta_profile(const WignerState& w0, long l, const PhysicalParams& params);

struct StabilityRow {
  long l = 0;
  double t = 0.0;
  double mean_norm = 0.0;   ///< || int dw0 dx ||_{C^{lambda_bar (1+b); 1}}
  double shift_norm = 0.0;  ///< sup_tau || dw0 ||_{Z^{lambda_bar (1+b), mu_bar; 1}_{tau - b t/(1+b)}}
  double tau_at_sup = 0.0;
  bool within = false;      ///< both norms <= delta0
};

struct StabilityOptions {
  double lambda_bar = 0.05;
  double mu_bar = 0.0;
  double b = 0.1;
  double delta0 = 1.0;
  std::vector<long> modes = {1, -1};
  std::vector<double> times = {1.0};
  std::size_t tau_points = 16;  ///< tau sampled uniformly on (0, t]
};

std::vector<StabilityRow> stability_report(const WignerState& w0, const PhysicalParams& params,
                                           const StabilityOptions& opts);

struct KernelSpec {
  double alpha = 0.1;
  double gamma = 1.0;
  long radius = 50;
};

struct KernelValue {
  double value = 0.0;
  long k = 0, l = 0;  ///< maximizing pair
};

/// K(t, s) = (1 + s) sup_{k, l != 0, k != l} e^{-alpha|l|} e^{-alpha (t-s)|k-l|/t} e^{-alpha|k(t-s) + l s|} / (1 + |k-l|^gamma)
/// on the one-dimensional lattice |k|, |l| <= R. Throws if the maximizer lies on the search boundary.
KernelValue kernel_K(const KernelSpec& spec, double t, double s);
/// Same supremum without a radius: for each l only the candidates k that can be maximal are
/// visited (neighbours of l and of the resonance k = -l s/(t - s)); rows stop once dominated.
KernelValue kernel_K_exact(const KernelSpec& spec, double t, double s);

struct KernelMoment {
  double moment = 0.0;    ///< e^{-eps t} int_0^t K(t, s) e^{eps s} ds
  double bracket = 0.0;   ///< general bound with C = 1
  double ratio = 0.0;     ///< moment / bracket
  double special = 0.0;   ///< eps <= alpha form with C = 1 (gamma = 1: (1/eps + 1/(eps^2 t))/alpha^3)
  bool special_applies = false;
};

KernelMoment kernel_moment(const KernelSpec& spec, double eps, double t);

struct DecayFit {
  double gamma = 0.0;
  double omega = 0.0;
  double goodness = 0.0;  ///< R^2 of the log-envelope fit
  std::size_t peaks = 0;
  std::size_t samples = 0;
};

/// Fit |s(t)| ~ A e^{-gamma t} |cos(omega t + phase)| on [t_min, t_max].
/// Needs >= 20 positive samples in the window.
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& s,
                   double t_min = -1e300, double t_max = 1e300);

}  // namespace qlandau
