#include <cmath>
#include <numbers>
#include <sstream>

#include "qlandau/core/error.hpp"
#include "qlandau/dispersion/dispersion.hpp"

namespace qlandau {

std::string method_name(DispersionMethod m) {
  switch (m) {
    case DispersionMethod::root: return "root";
    case DispersionMethod::bohm_gross: return "bohm_gross";
    case DispersionMethod::closed_form: return "closed_form";
    case DispersionMethod::general_gamma: return "general_gamma";
  }
  return "unknown";
}

DispersionPoint bohm_gross(double k, const PhysicalParams& params) {
  DispersionPoint p;
  p.k = k;
  p.method = DispersionMethod::bohm_gross;
  const double wp = params.omega_pe(), vT = params.vT(), m = params.mass(), hbar = params.hbar();
  const double q = hbar * k * k / (2.0 * m);
  p.omega_r = std::sqrt(wp * wp + 3.0 * k * k * vT * vT + q * q);
  if (std::abs(k) * vT / wp > 0.5) {
    std::ostringstream msg;
    msg << "k vT / omega_pe = " << std::abs(k) * vT / wp << " is outside the small-k expansion";
    p.warnings.push_back(msg.str());
  }
  return p;
}

double dielectric_imag(double omega, double k, const BackgroundProfile& profile, const PhysicalParams& params) {
  require(k != 0.0, "dielectric_imag: k must be nonzero");
  const double kk = std::abs(k), wp2 = params.omega_pe() * params.omega_pe();
  if (params.classical()) return -std::numbers::pi * wp2 / (kk * kk) * profile.derivative(omega / kk);
  const double u = omega / kk, d = params.hbar() * kk / (2.0 * params.mass());
  auto quotient = [&](double h) { return (profile(u + h) - profile(u - h)) / (2.0 * h); };
  const double d1 = 1e-3 * profile.vT();
  double S;
  if (d >= d1) {
    S = quotient(d);
  } else {
    const double f1 = profile.derivative(u);
    S = f1 + (d / d1) * (d / d1) * (quotient(d1) - f1);
  }
  return -std::numbers::pi * wp2 / (kk * kk) * S;
}

DispersionPoint damping_closed(double k, const BackgroundProfile& profile, const PhysicalParams& params,
                               std::optional<double> omega_r) {
  DispersionPoint p;
  p.k = k;
  p.method = DispersionMethod::closed_form;
  if (omega_r) {
    p.omega_r = *omega_r;
  } else {
    DispersionPoint bg = bohm_gross(k, params);
    p.omega_r = bg.omega_r;
    p.warnings = std::move(bg.warnings);
  }
  p.gamma = 0.5 * params.omega_pe() * dielectric_imag(p.omega_r, k, profile, params);
  if (p.omega_r / std::abs(k) < 2.5 * params.vT()) {
    p.warnings.push_back("phase velocity below 2.5 vT: outside the weak-damping window");
  }
  return p;
}

double dielectric_real_slope(double omega, double k, const BackgroundProfile& profile, const PhysicalParams& params) {
  const double h = 1e-4 * std::max(1.0, std::abs(omega));
  return (dielectric(omega + h, k, profile, params).real() - dielectric(omega - h, k, profile, params).real()) /
         (2.0 * h);
}

DispersionPoint damping_general(double k, double omega_r, const BackgroundProfile& profile,
                                const PhysicalParams& params) {
  DispersionPoint p;
  p.k = k;
  p.omega_r = omega_r;
  p.method = DispersionMethod::general_gamma;
  const double slope = dielectric_real_slope(omega_r, k, profile, params);
  if (!(std::abs(slope) > 1e-12)) {
    fail(ErrorKind::numerical_abort, "damping_general: d eps_r / d omega vanishes at omega_r");
  }
  const double ei = dielectric_imag(omega_r, k, profile, params);
  p.gamma = ei / slope;
  if (std::abs(ei) > 0.1 * std::abs(omega_r * slope)) {
    p.warnings.push_back("|eps_i| is not small against omega_r d eps_r/d omega: weak-damping formula is unreliable");
  }
  return p;
}

}  // namespace qlandau
