#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qlandau/core/error.hpp"
#include "qlandau/dispersion/dispersion.hpp"

namespace qlandau {

namespace gk = boost::math::quadrature;

namespace {

using Rule = gk::gauss_kronrod<double, 31>;
constexpr unsigned kDepth = 25;
constexpr double kTol = 1e-14;

template <class F>
cplx integrate(F f, double a, double b) {
  if (b <= a) return 0.0;
  return Rule::integrate(f, a, b, kDepth, kTol);
}

}  // namespace

cplx landau_integral(cplx zeta, const BackgroundProfile& profile, int order) {
  require(order == 0 || order == 1, "landau_integral: order must be 0 or 1");
  if (profile.variant() == BackgroundProfile::Variant::vacuum) return 0.0;
  auto g = [&](double v) { return order == 0 ? profile(v) : profile.derivative(v); };
  auto gz = [&](cplx z) { return order == 0 ? profile(z) : profile.derivative(z); };
  const double x = zeta.real(), y = zeta.imag();
  const double V = profile.cutoff() + std::abs(x) + profile.vT();
  const double split = std::clamp(x, -V, V);

  if (y >= 0.25 * profile.vT()) {
    // Well above the axis: the plain integral is smooth.
    auto f = [&](double v) { return cplx(g(v)) / (v - zeta); };
    return integrate(f, -V, split) + integrate(f, split, V);
  }
  // Subtract the pole, integrate the regular part, add the exact
  // logarithm and the residue bookkeeping of the Landau contour.
  const cplx g0 = gz(zeta);
  auto f = [&](double v) { return (cplx(g(v)) - g0) / (v - zeta); };
  const cplx regular = integrate(f, -V, split) + integrate(f, split, V);
  cplx log_term;
  if (y == 0.0) {
    log_term = cplx(std::log(std::abs((V - x) / (V + x))), std::numbers::pi);
  } else {
    log_term = std::log(cplx(V) - zeta) - std::log(cplx(-V) - zeta);
    if (y < 0.0) log_term += cplx(0.0, 2.0 * std::numbers::pi);
  }
  return regular + g0 * log_term;
}

cplx dielectric(cplx omega, double k, const BackgroundProfile& profile, const PhysicalParams& params) {
  if (k == 0.0 || !std::isfinite(k)) fail(ErrorKind::invalid_argument, "dielectric: k must be finite and nonzero");
  if (!std::isfinite(omega.real()) || !std::isfinite(omega.imag())) {
    fail(ErrorKind::invalid_argument, "dielectric: omega must be finite");
  }
  if (profile.variant() == BackgroundProfile::Variant::vacuum) return 1.0;
  const double kk = std::abs(k);
  const double wp2 = params.omega_pe() * params.omega_pe();
  cplx eps;
  if (params.classical()) {
    eps = 1.0 - wp2 / (kk * kk) * landau_integral(omega / kk, profile, 1);
  } else {
    // eps = 1 - (wp^2/k^2) [Z(zeta + d) - Z(zeta - d)] / 2d with d = hbar k / 2m.
    // For small d the quotient is Z'(zeta) + d^2 c, with c taken from d1.
    const cplx zeta = omega / kk;
    const double d = params.hbar() * kk / (2.0 * params.mass());
    auto quotient = [&](double h) {
      return (landau_integral(zeta + h, profile, 0) - landau_integral(zeta - h, profile, 0)) / (2.0 * h);
    };
    const double d1 = 1e-3 * profile.vT();
    cplx S;
    if (d >= d1) {
      S = quotient(d);
    } else {
      const cplx z1 = landau_integral(zeta, profile, 1);
      S = z1 + (d / d1) * (d / d1) * (quotient(d1) - z1);
    }
    eps = 1.0 - wp2 / (kk * kk) * S;
  }
  if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag())) {
    fail(ErrorKind::numerical_abort, "dielectric: non-finite value (resonance on the integration contour)");
  }
  return eps;
}

DispersionPoint solve_root(double k, const BackgroundProfile& profile, const PhysicalParams& params,
                           const RootOptions& opts) {
  require(k != 0.0 && std::isfinite(k), "solve_root: k must be finite and nonzero");
  require(profile.variant() != BackgroundProfile::Variant::vacuum, "solve_root: vacuum has no plasma root");
  DispersionPoint out;
  out.k = k;
  out.method = DispersionMethod::root;
  cplx w;
  if (opts.seed) {
    w = *opts.seed;
  } else {
    const DispersionPoint bg = bohm_gross(k, params);
    const DispersionPoint gc = damping_closed(k, profile, params, bg.omega_r);
    w = cplx(bg.omega_r, -gc.gamma);
  }
  cplx e = dielectric(w, k, profile, params);
  int it = 0;
  for (; it < opts.max_iterations && std::abs(e) > opts.tolerance; ++it) {
    const double h = 1e-6 * std::max(1.0, std::abs(w));
    const cplx d = (dielectric(w + h, k, profile, params) - dielectric(w - h, k, profile, params)) / (2.0 * h);
    if (d == 0.0) break;
    cplx step = e / d;
    const double cap = 0.5 * std::max(std::abs(w), params.omega_pe());
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    w -= step;
    e = dielectric(w, k, profile, params);
    if (std::abs(step) < 1e-15 * std::abs(w)) break;
  }
  out.iterations = it;
  out.residual = std::abs(e);
  out.omega_r = w.real();
  out.gamma = -w.imag();
  if (!(out.residual < 1e-10)) {
    std::ostringstream msg;
    msg << "solve_root: no convergence after " << it << " iterations, |eps| = " << out.residual << " at omega = "
        << w.real() << (w.imag() < 0 ? " - " : " + ") << std::abs(w.imag()) << "i";
    fail(ErrorKind::not_converged, msg.str());
  }
  if (std::abs(w) < 0.1 * params.omega_pe()) {
    out.flagged = true;
    out.warnings.push_back("root lies on a low-frequency branch (|omega| << omega_pe)");
  }
  return out;
}

}  // namespace qlandau
