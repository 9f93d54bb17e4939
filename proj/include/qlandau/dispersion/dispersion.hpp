#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qlandau/core/params.hpp"

namespace qlandau {

using cplx = std::complex<double>;

/// Li_{3/2}(-x), x >= 0.
///   series     : Cohen-Villegas-Zagier accelerated alternating series, x <= 1
///   quadrature : Fermi-Dirac integral (2/sqrt(pi)) int u^2 / (e^{u^2}/x + 1) du, any x
double polylog_3_2_neg_series(double x);
double polylog_3_2_neg_quadrature(double x);
double polylog_3_2_neg(double x);

/// N(mu) = -1 / (sqrt(2 pi) Li_{3/2}(-e^{mu/T})), chosen so the reduced Fermi
/// profile has unit mass. Supported for mu/T <= 10; overflows to inf below
/// mu/T ~ -709, where the profile itself stays finite (it is evaluated as
/// (N e^{mu/T}) (e^{-mu/T} ln(1 + e^{mu/T - v^2/2vT^2}))).
double fd_normalization(double mu_over_T);

/// One-dimensional velocity background F(v), normalized to unit mass.
///   maxwellian    : (2 pi vT^2)^{-1/2} exp(-v^2 / 2 vT^2)
///   fermi_reduced : (N/vT) ln(1 + exp(mu/T - v^2 / 2 vT^2))
///   vacuum        : 0
class BackgroundProfile {
 public:
  enum class Variant { maxwellian, fermi_reduced, vacuum };

  static BackgroundProfile maxwellian(const PhysicalParams& params);
  static BackgroundProfile fermi_reduced(const PhysicalParams& params);
  static BackgroundProfile vacuum(const PhysicalParams& params);

  Variant variant() const noexcept { return variant_; }
  std::string name() const;
  double vT() const noexcept { return vT_; }
  double mu_over_T() const noexcept { return mu_; }
  /// Prefactor N of the profile (1/sqrt(2 pi) for the Maxwellian).
  double normalization() const noexcept;

  double operator()(double v) const;
  double derivative(double v) const;
  /// Analytic continuations to complex velocity.
  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;

  /// int F dv by adaptive quadrature.
  double mass() const;
  /// Velocity beyond which F is negligible: 10 vT (+ sqrt(2 mu/T) vT when mu/T > 0).
  double cutoff() const;

 private:
  BackgroundProfile(Variant v, double vT, double mu, double norm) : variant_(v), vT_(vT), mu_(mu), norm_(norm) {}
  Variant variant_;
  double vT_;
  double mu_;
  double norm_;  ///< N e^{mu/T} for fermi_reduced
};

/// Reduced profile n0(v) of the quantum background.
double fermi_reduced(double v, const BackgroundProfile& profile);

enum class DispersionMethod { root, bohm_gross, closed_form, general_gamma };
std::string method_name(DispersionMethod m);

/// omega = omega_r - i gamma; gamma > 0 is damping.
struct DispersionPoint {
  double k = 0.0;
  double omega_r = 0.0;
  double gamma = 0.0;
  DispersionMethod method = DispersionMethod::root;
  double residual = 0.0;  ///< |eps| at omega_r - i gamma (root only)
  int iterations = 0;
  bool flagged = false;  ///< converged to a low-frequency branch |omega| << omega_pe
  std::vector<std::string> warnings;
  cplx omega() const { return {omega_r, -gamma}; }
};

/// Longitudinal dielectric function on the Landau contour:
///   eps = 1 - omega_pe^2 int F / ((omega - k v)^2 - hbar^2 k^4 / 4m^2) dv
///       = 1 + (omega_pe^2 m / (hbar k^3)) [Z(zeta_-) - Z(zeta_+)],
///   zeta_pm = (omega +- hbar k^2/2m) / k,  Z(zeta) = int F / (v - zeta) dv,
/// continued analytically to Im omega <= 0. hbar == 0 uses the classical
/// form eps = 1 - (omega_pe^2 / k^2) int F' / (v - omega/k) dv.
cplx dielectric(cplx omega, double k, const BackgroundProfile& profile, const PhysicalParams& params);

/// Landau-contour integral Z(zeta) = int g / (v - zeta) dv for g = F (order 0) or F' (order 1).
cplx landau_integral(cplx zeta, const BackgroundProfile& profile, int order = 0);

/// omega^2 = omega_pe^2 + 3 k^2 vT^2 + hbar^2 k^4 / 4m^2.
DispersionPoint bohm_gross(double k, const PhysicalParams& params);

/// Imaginary part of eps on the real axis:
///   eps_i = (pi omega_pe^2 m / (hbar k^3)) [F(omega_-/k) - F(omega_+/k)]
/// (classical: -(pi omega_pe^2 / k^2) F'(omega/k)).
double dielectric_imag(double omega, double k, const BackgroundProfile& profile, const PhysicalParams& params);

/// gamma = eps_i omega_pe / 2 with omega_r from bohm_gross unless supplied.
/// For the reduced Fermi background this is
///   gamma = (pi omega_pe^3 m / (2 hbar k^3)) (N/vT)
///           ln[(1 + e^{mu/T} e^{-omega_-^2/2k^2vT^2}) / (1 + e^{mu/T} e^{-omega_+^2/2k^2vT^2})].
DispersionPoint damping_closed(double k, const BackgroundProfile& profile, const PhysicalParams& params,
                               std::optional<double> omega_r = std::nullopt);

/// gamma = eps_i(omega_r) / (d eps_r / d omega)(omega_r), derivative by central difference.
DispersionPoint damping_general(double k, double omega_r, const BackgroundProfile& profile,
                                const PhysicalParams& params);

/// d eps_r / d omega on the real axis.
double dielectric_real_slope(double omega, double k, const BackgroundProfile& profile, const PhysicalParams& params);

struct RootOptions {
  std::optional<cplx> seed;  ///< default: bohm_gross and damping_closed
  int max_iterations = 60;
  double tolerance = 1e-12;  ///< target |eps|; failure above 1e-10
};

/// Complex Newton iteration on eps(omega, k) = 0.
DispersionPoint solve_root(double k, const BackgroundProfile& profile, const PhysicalParams& params,
                           const RootOptions& opts = {});

}  // namespace qlandau
