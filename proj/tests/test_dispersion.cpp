#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "approx.hpp"
#include "qlandau/core/error.hpp"
#include "qlandau/dispersion/dispersion.hpp"

using namespace qlandau;

namespace {

constexpr double kPi = std::numbers::pi;

PhysicalParams params(double H, double k = 0.5) { return PhysicalParams::normalized(H, 2.0 * kPi / k); }

cplx maxwell(cplx v) { return std::exp(-0.5 * v * v) / std::sqrt(2.0 * kPi); }

// Landau-contour integral of g(v)/(v - zeta) for entire g: the contour is
// pushed to Im v = -c below the pole and summed by the trapezoid rule.
template <class G>
cplx contour_integral(G g, cplx zeta) {
  const double c = std::max(1.0, 1.0 - zeta.imag());
  const double du = 0.005;
  cplx sum = 0.0;
  for (double u = -14.0; u <= 14.0; u += du) {
    const cplx v(u, -c);
    sum += g(v) / (v - zeta);
  }
  return sum * du;
}

cplx classical_eps(cplx omega, double k) {
  return 1.0 - contour_integral([](cplx v) { return -v * maxwell(v); }, omega / k) / (k * k);
}

cplx quantum_eps(cplx omega, double k, double hbar) {
  const double q = hbar * k * k / 2.0;
  const cplx zm = contour_integral(maxwell, (omega - q) / k);
  const cplx zp = contour_integral(maxwell, (omega + q) / k);
  return 1.0 + (zm - zp) / (hbar * k * k * k);
}

cplx newton(cplx w, double k) {
  for (int i = 0; i < 40; ++i) {
    const cplx h(1e-6, 0.0);
    const cplx d = (classical_eps(w + h, k) - classical_eps(w - h, k)) / (2.0 * h);
    w -= classical_eps(w, k) / d;
  }
  return w;
}

}  // namespace

TEST_CASE("polylogarithm of order 3/2") {
  const double eta = (1.0 - 1.0 / std::sqrt(2.0)) * std::riemann_zeta(1.5);
  CHECK(polylog_3_2_neg_series(1.0) == Rel(-eta).epsilon(1e-12));
  CHECK(polylog_3_2_neg_quadrature(1.0) == Rel(-eta).epsilon(1e-10));
  for (double mu = -20.0; mu <= 0.0; mu += 0.5) {
    const double x = std::exp(mu);
    CAPTURE(mu);
    CHECK(polylog_3_2_neg_series(x) == Rel(polylog_3_2_neg_quadrature(x)).epsilon(1e-8));
  }
  CHECK(polylog_3_2_neg(1e-6) == Rel(-1e-6 + 1e-12 / std::pow(2.0, 1.5)).epsilon(1e-12));
}

TEST_CASE("Fermi background mass, parity and classical limit") {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double mu : {-20.0, -5.0, 0.0, 3.0, 5.0, 10.0}) {
    const auto p = PhysicalParams::normalized(0.1, 4.0 * kPi, mu);
    const auto prof = BackgroundProfile::fermi_reduced(p);
    const double m = ts.integrate([&](double v) { return prof(v); }, -40.0, 40.0);
    CAPTURE(mu);
    CHECK(m == Rel(1.0).epsilon(1e-8));
    CHECK(prof.mass() == Rel(1.0).epsilon(1e-8));
    CHECK(fd_normalization(mu) > 0.0);
    for (double v : {0.3, 1.7, 4.0}) {
      CHECK(prof(v) == prof(-v));
      CHECK(prof(v) <= prof(0.5 * v));
    }
  }
  const auto p = PhysicalParams::normalized(0.1, 4.0 * kPi, -20.0);
  const auto f = BackgroundProfile::fermi_reduced(p);
  const auto g = BackgroundProfile::maxwellian(p);
  double err = 0.0;
  for (double v = -10.0; v <= 10.0; v += 0.01) err = std::max(err, std::abs(f(v) - g(v)));
  CHECK(err < 1e-8 * g(0.0));
  CHECK(BackgroundProfile::fermi_reduced(PhysicalParams::normalized(0.1, 1.0, -800.0))(0.0) > 0.0);
  CHECK_THROWS_AS(fd_normalization(11.0), Error);
}

TEST_CASE("dielectric function") {
  const auto p0 = params(0.0);
  const auto vac = BackgroundProfile::vacuum(p0);
  CHECK(dielectric({1.2, -0.05}, 0.3, vac, p0) == cplx(1.0, 0.0));
  const auto mw = BackgroundProfile::maxwellian(p0);
  CHECK(std::abs(dielectric({0.0, 1e4}, 0.3, mw, p0) - 1.0) < 1e-7);

  SUBCASE("classical limit against the contour oracle") {
    const cplx w(1.2, -0.05);
    const auto p = params(1e-6);
    const cplx ref = classical_eps(w, 0.3);
    CHECK(std::abs(dielectric(w, 0.3, mw, p) - ref) < 1e-6);
    CHECK(std::abs(dielectric(w, 0.3, mw, p0) - ref) < 1e-10);
  }
  SUBCASE("quantum form against the contour oracle") {
    for (double H : {0.1, 0.5, 1.0}) {
      const auto p = params(H);
      for (cplx w : {cplx(1.3, 0.2), cplx(1.2, -0.05), cplx(0.9, -0.3)}) {
        CAPTURE(H);
        CAPTURE(w);
        CHECK(std::abs(dielectric(w, 0.4, mw, p) - quantum_eps(w, 0.4, H)) < 1e-9);
      }
    }
  }
  SUBCASE("small hbar switch is seamless") {
    const double k = 0.4, d1 = 1e-3, H = 2.0 * d1 / k;
    const cplx w(1.25, -0.08);
    const cplx below = dielectric(w, k, mw, params(H * (1.0 - 1e-9)));
    const cplx above = dielectric(w, k, mw, params(H * (1.0 + 1e-9)));
    CHECK(std::abs(below - above) < 1e-12);
    CHECK(std::abs(dielectric(w, k, mw, params(1e-9)) - dielectric(w, k, mw, p0)) < 1e-12);
  }
  SUBCASE("continuity across the real axis and reflection symmetry") {
    const auto p = params(0.2);
    const auto fd = BackgroundProfile::fermi_reduced(p);
    for (double wr : {0.8, 1.2, 1.6}) {
      CHECK(std::abs(dielectric({wr, 1e-13}, 0.35, fd, p) - dielectric({wr, -1e-13}, 0.35, fd, p)) < 1e-10);
      const cplx w(wr, 0.3);
      CHECK(std::abs(dielectric(std::conj(w), 0.35, fd, p) - std::conj(dielectric(w, 0.35, fd, p))) > 0.0);
      CHECK(std::abs(dielectric(-std::conj(w), 0.35, fd, p) - std::conj(dielectric(w, 0.35, fd, p))) < 1e-10);
    }
  }
  CHECK_THROWS_AS(dielectric({1.0, 0.0}, 0.0, mw, p0), Error);
}

TEST_CASE("Bohm-Gross truncation") {
  CHECK(bohm_gross(1e-6, params(0.1)).omega_r == Rel(1.0).epsilon(1e-10));
  CHECK(bohm_gross(0.1, params(0.0)).omega_r == Rel(std::sqrt(1.03)).epsilon(1e-14));
  PhysicalParams::Fields f;
  f.hbar = 0.7;
  f.vT = 1e-9;
  f.box_length = 2.0 * kPi / 0.5;
  const PhysicalParams cold(f);
  CHECK(bohm_gross(0.5, cold).omega_r == Rel(std::sqrt(1.0 + 0.49 * 0.0625 / 4.0)).epsilon(1e-14));
  CHECK(!bohm_gross(1.5, params(0.1)).warnings.empty());
}

TEST_CASE("damping rates") {
  const auto p = params(0.1, 0.3);
  const auto fd = BackgroundProfile::fermi_reduced(p);
  const auto root = solve_root(0.3, fd, p);
  const auto closed = damping_closed(0.3, fd, p, root.omega_r);
  const auto general = damping_general(0.3, root.omega_r, fd, p);
  CHECK(closed.gamma > 0.0);
  CHECK(closed.gamma == Rel(0.5 * dielectric_imag(root.omega_r, 0.3, fd, p)).epsilon(1e-12));
  const double slope = dielectric_real_slope(root.omega_r, 0.3, fd, p);
  CHECK(2.0 * closed.gamma == Rel(slope * general.gamma).epsilon(1e-10));
  CHECK(dielectric_real_slope(1.0, 1e-3, fd, params(0.1, 1e-3)) == Rel(2.0).epsilon(0.01));

  SUBCASE("general rate tracks the root for k <= 0.35") {
    for (double H : {0.05, 0.1}) {
      for (double k : {0.25, 0.3, 0.35}) {
        const auto pk = params(H, k);
        const auto prof = BackgroundProfile::fermi_reduced(pk);
        const auto r = solve_root(k, prof, pk);
        CAPTURE(k);
        CHECK(damping_general(k, r.omega_r, prof, pk).gamma == Rel(r.gamma).epsilon(0.10));
      }
    }
  }
  SUBCASE("exponential scaling in the nondegenerate limit") {
    const auto rate = [](double k) {
      const auto pk = PhysicalParams::normalized(0.01, 2.0 * kPi / k, -10.0);
      return damping_closed(k, BackgroundProfile::fermi_reduced(pk), pk, 1.1).gamma;
    };
    const auto model = [](double k) {
      const double u = 1.1 / k;
      return u / (k * k) * std::exp(-0.5 * u * u);
    };
    CHECK(rate(0.3) / rate(0.4) == Rel(model(0.3) / model(0.4)).epsilon(0.05));
  }
  SUBCASE("a flat background does not damp") {
    const auto pv = params(0.1, 0.3);
    const auto vac = BackgroundProfile::vacuum(pv);
    CHECK(damping_closed(0.3, vac, pv, 1.2).gamma == 0.0);
    CHECK(dielectric_imag(1.2, 0.3, vac, pv) == 0.0);
    CHECK_THROWS_AS(damping_general(0.3, 1.2, vac, pv), Error);
  }
}

TEST_CASE("complex roots") {
  SUBCASE("classical k = 0.5 against an independent Newton solve") {
    const auto p = params(1e-8);
    const auto r = solve_root(0.5, BackgroundProfile::maxwellian(p), p);
    const cplx ref = newton({1.4, -0.15}, 0.5);
    CHECK(std::abs(classical_eps(ref, 0.5)) < 1e-10);
    CHECK(r.residual < 1e-10);
    CHECK(r.omega_r == Rel(ref.real()).epsilon(1e-4));
    CHECK(r.gamma == Rel(-ref.imag()).epsilon(1e-4));
    CHECK(r.omega_r == Rel(1.4157).epsilon(1e-4));
    CHECK(r.gamma == Rel(0.1534).epsilon(1e-3));
  }
  SUBCASE("roots come in mirror pairs") {
    const auto p = params(0.2, 0.4);
    const auto fd = BackgroundProfile::fermi_reduced(p);
    const auto r = solve_root(0.4, fd, p);
    CHECK(std::abs(dielectric(-std::conj(r.omega()), 0.4, fd, p)) < 1e-10);
  }
  SUBCASE("quantum rate converges monotonically to the classical one") {
    const auto gam = [](double H) {
      const auto p = params(H, 0.35);
      return solve_root(0.35, BackgroundProfile::fermi_reduced(p), p).gamma;
    };
    const auto pc = params(0.0, 0.35);
    const double classical = solve_root(0.35, BackgroundProfile::maxwellian(pc), pc).gamma;
    double prev = 1e300;
    for (double H : {0.2, 0.1, 0.05, 0.025}) {
      const double d = std::abs(gam(H) - classical);
      CHECK(d < prev);
      prev = d;
    }
  }
  SUBCASE("small k matches the asymptotic forms") {
    const auto p = params(0.1, 0.15);
    const auto fd = BackgroundProfile::fermi_reduced(p);
    const auto r = solve_root(0.15, fd, p);
    CHECK(std::abs(r.omega_r - bohm_gross(0.15, p).omega_r) < 5.0 * std::pow(0.15, 4));
    CHECK(damping_closed(0.15, fd, p, r.omega_r).gamma == Rel(r.gamma).epsilon(0.10));
  }
  SUBCASE("non-convergence") {
    const auto p = params(0.1, 0.3);
    RootOptions o;
    o.max_iterations = 1;
    CHECK_THROWS_AS(solve_root(0.3, BackgroundProfile::fermi_reduced(p), p, o), Error);
  }
}

TEST_CASE("closed-form damping agrees with the general rate at k = 0.3") {
  const auto p = params(0.1, 0.3);
  const auto fd = BackgroundProfile::fermi_reduced(p);
  const auto root = solve_root(0.3, fd, p);
  CHECK(damping_closed(0.3, fd, p, root.omega_r).gamma ==
        Rel(damping_general(0.3, root.omega_r, fd, p).gamma).epsilon(0.01));
}
