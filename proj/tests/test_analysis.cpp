#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "approx.hpp"
#include "qlandau/analysis/analysis.hpp"
#include "qlandau/core/error.hpp"
#include "qlandau/wigner/wigner.hpp"
#include "support.hpp"

using namespace qlandau;

namespace {

constexpr double kPi = std::numbers::pi;

NormSpec spec(NormFamily f, double lambda, double mu = 0.0, double tau = 0.0, int p = 1) {
  NormSpec s;
  s.family = f;
  s.lambda = lambda;
  s.mu = mu;
  s.tau = tau;
  s.p = p;
  return s;
}

SpectralData single_mode(std::size_t nx, std::size_t nv, double L, double vmax, long l0, long j0, cplx a) {
  std::vector<cplx> e(nx * nv, 0.0);
  const auto li = static_cast<std::size_t>((l0 + static_cast<long>(nx)) % static_cast<long>(nx));
  const auto ji = static_cast<std::size_t>((j0 + static_cast<long>(nv)) % static_cast<long>(nv));
  e[li * nv + ji] = a;
  return SpectralData::from_eta(nx, nv, L, vmax, std::move(e));
}

}  // namespace

TEST_CASE("single-mode closed forms") {
  const std::size_t nx = 16, nv = 64;
  const double L = 4.0 * kPi, vmax = 6.0;
  const cplx a(0.6, -0.8);
  const long l0 = 2, j0 = -3;
  const auto f = single_mode(nx, nv, L, vmax, l0, j0, a);
  const double eta0 = static_cast<double>(j0) * f.deta();
  for (double lambda : {0.0, 0.05, 0.2}) {
    for (double mu : {0.0, 0.1}) {
      for (double tau : {0.0, 1.5, -4.0}) {
        const double w = std::exp(2.0 * kPi * mu * std::abs(l0)) *
                         std::exp(2.0 * kPi * lambda * std::abs(eta0 + tau * l0 / L));
        CAPTURE(lambda);
        CAPTURE(mu);
        CAPTURE(tau);
        CHECK(norm_hybrid(f, spec(NormFamily::Y, lambda, mu, tau)).value == Rel(w).epsilon(1e-12));
        CHECK(norm_hybrid(f, spec(NormFamily::F, lambda, mu, tau)).value == Rel(w * f.deta()).epsilon(1e-12));
        CHECK(norm_hybrid(f, spec(NormFamily::Z, lambda, mu, tau)).value == Rel(w).epsilon(1e-12));
        CHECK(norm_hybrid(f, spec(NormFamily::Z, lambda, mu, tau, 0)).value ==
              Rel(w * f.deta()).epsilon(1e-12));
        CHECK(norm_hybrid(f, spec(NormFamily::C, lambda, mu, tau)).value == Rel(w).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("x-only fields: F and Z agree with the combined width") {
  const double L = 4.0 * kPi;
  std::vector<double> vals(32);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = 0.3 * std::cos(2.0 * kPi * 3.0 * static_cast<double>(i) / 32.0);
  const auto f = SpectralData::from_x_field(vals, L);
  CHECK(f.x_only());
  const double lambda = 0.1, mu = 0.05, tau = 2.0;
  const double width = mu + lambda * std::abs(tau) / L;
  const double expect = 0.3 * std::exp(2.0 * kPi * width * 3.0);
  const double F = norm_hybrid(f, spec(NormFamily::F, lambda, mu, tau)).value;
  const double Z = norm_hybrid(f, spec(NormFamily::Z, lambda, mu, tau)).value;
  CHECK(F == Rel(expect).epsilon(1e-12));
  CHECK(Z == Rel(expect).epsilon(1e-12));
  CHECK(norm_hybrid(f, spec(NormFamily::F, 0.0, width, 0.0)).value == Rel(expect).epsilon(1e-12));
}

TEST_CASE("norms are homogeneous of degree one") {
  std::mt19937_64 rng(11);
  const auto f = qtest::random_field(rng);
  const cplx c(-1.5, 2.0);
  const auto g = f.scaled(c);
  for (auto fam : {NormFamily::C, NormFamily::F, NormFamily::Z, NormFamily::Y}) {
    const auto s = spec(fam, 0.1, 0.05, 1.0);
    CHECK(norm_hybrid(g, s).value == Rel(std::abs(c) * norm_hybrid(f, s).value).epsilon(1e-12));
  }
}

TEST_CASE("velocity-only functions") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = qtest::random_field(rng, 16, 64, 0, 6);
    const double z0 = norm_hybrid(f, spec(NormFamily::Z, 0.1)).value;
    for (double mu : {0.0, 0.2}) {
      for (double tau : {0.0, 3.0}) {
        CHECK(norm_hybrid(f, spec(NormFamily::Z, 0.1, mu, tau)).value == Rel(z0).epsilon(1e-12));
        CHECK(norm_hybrid(f, spec(NormFamily::C, 0.1, mu, tau)).value == Rel(z0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("norm inequalities on random band-limited fields") {
  std::mt19937_64 rng(2024);
  const double L = 4.0 * kPi;
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = qtest::random_field(rng);
    const double lambda = 0.02 * (trial % 5 + 1), mu = 0.01 * (trial % 3), tau = 0.5 * (trial % 7) - 1.5;
    const auto z = norm_hybrid(f, spec(NormFamily::Z, lambda, mu, tau));
    const auto y = norm_hybrid(f, spec(NormFamily::Y, lambda, mu, tau));
    CHECK(y.value <= z.value + z.truncation_error + y.truncation_error);
    const auto rho = norm_hybrid(f.density(), spec(NormFamily::F, 0.0, mu + lambda * std::abs(tau) / L));
    CHECK(rho.value <= z.value + z.truncation_error + rho.truncation_error);
  }
}

TEST_CASE("density is the eta = 0 row") {
  std::mt19937_64 rng(3);
  const auto f = qtest::random_field(rng);
  const auto d = f.density();
  CHECK(d.x_only());
  for (std::size_t l = 0; l < f.nx(); ++l) CHECK(std::abs(d.fhat(l, 0) - f.ftilde(l, 0)) < 1e-12);
}

TEST_CASE("under-resolved weights raise a resolution error") {
  const double L = 4.0 * kPi;
  const auto p = PhysicalParams::normalized(0.1, L);
  const auto w = maxwellian_profile(make_grid(16, 64, L, 6.0), p);
  CHECK_NOTHROW(norm_hybrid(w, spec(NormFamily::F, 0.1)));
  try {
    norm_hybrid(w, spec(NormFamily::F, 8.0));
    FAIL("expected a resolution error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resolution);
  }
}

TEST_CASE("quantum difference quotient") {
  const double L = 4.0 * kPi;
  const auto g = make_grid(16, 128, L, 8.0);
  const auto err = [&](double H) {
    const auto p = PhysicalParams::normalized(H, L);
    const auto d = delta_profile(maxwellian_profile(g, p), 1, p);
    double e = 0.0;
    for (std::size_t m = 0; m < g.nv(); ++m) e = std::max(e, std::abs(d(0, m) - g.v(m) * qtest::gauss(g.v(m))));
    return e;
  };
  CHECK(err(0.2) / err(0.1) == Rel(4.0).epsilon(0.05));

  const auto p = PhysicalParams::normalized(0.7, L);
  const double q = p.hbar() * (2.0 * kPi * 2.0 / L) / 2.0;
  const auto d = delta_profile(maxwellian_profile(g, p), 2, p);
  double e = 0.0;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t m = 0; m < g.nv(); ++m) {
      const double v = g.v(m);
      e = std::max(e, std::abs(d(i, m) - (qtest::gauss(v - q) - qtest::gauss(v + q)) / (2.0 * q)));
    }
  }
  CHECK(e < 1e-12);
  CHECK_THROWS_AS(delta_profile(maxwellian_profile(g, p), 0, p), Error);
}

TEST_CASE("stability report") {
  const double L = 4.0 * kPi;
  const auto p = PhysicalParams::normalized(0.1, L);
  const auto g = make_grid(16, 128, L, 8.0);
  const auto w0 = maxwellian_profile(g, p);
  StabilityOptions o;
  o.times = {1.0, 5.0};
  o.tau_points = 8;
  const auto rows = stability_report(w0, p, o);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(std::isfinite(r.mean_norm));
    CHECK(std::isfinite(r.shift_norm));
    CHECK(r.mean_norm > 0.0);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i].l == -rows[j].l && rows[i].t == rows[j].t) {
        CHECK(rows[i].mean_norm == Rel(rows[j].mean_norm).epsilon(1e-12));
        CHECK(rows[i].shift_norm == Rel(rows[j].shift_norm).epsilon(1e-12));
      }
    }
  }
  auto narrow = o;
  narrow.lambda_bar = 0.02;
  const auto rn = stability_report(w0, p, narrow);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rn[i].mean_norm < rows[i].mean_norm);
    CHECK(rn[i].shift_norm < rows[i].shift_norm);
  }
  const auto rz = stability_report(WignerState(g), p, o);
  for (const auto& r : rz) {
    CHECK(r.mean_norm == 0.0);
    CHECK(r.shift_norm == 0.0);
    CHECK(r.within);
  }
}

TEST_CASE("resonance kernel") {
  KernelSpec ks;
  SUBCASE("s = t is attained at |l| = |k - l| = 1") {
    for (double t : {0.5, 3.0, 20.0}) {
      const auto v = kernel_K(ks, t, t);
      CHECK(v.value == Rel((1.0 + t) * std::exp(-ks.alpha * (1.0 + t)) / 2.0).epsilon(1e-14));
      CHECK(std::abs(v.l) == 1);
      CHECK(std::abs(v.k - v.l) == 1);
    }
  }
  SUBCASE("independent shuffled enumeration") {
    std::mt19937_64 rng(9);
    std::vector<std::pair<long, long>> pairs;
    for (long l = -50; l <= 50; ++l) {
      for (long k = -50; k <= 50; ++k) {
        if (l != 0 && k != 0 && k != l) pairs.emplace_back(k, l);
      }
    }
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (auto [t, s] : {std::pair{2.0, 0.5}, {10.0, 7.0}, {30.0, 29.0}, {5.0, 0.0}}) {
      double best = 0.0;
      for (auto [k, l] : pairs) {
        const double a = ks.alpha, d = std::abs(double(k - l));
        const double term = std::exp(-a * std::abs(double(l))) * std::exp(-a * (t - s) * d / t) *
                            std::exp(-a * std::abs(k * (t - s) + l * s)) / (1.0 + std::pow(d, ks.gamma));
        best = std::max(best, (1.0 + s) * term);
      }
      CHECK(kernel_K(ks, t, s).value == Rel(best).epsilon(1e-13));
      CHECK(kernel_K_exact(ks, t, s).value == Rel(best).epsilon(1e-13));
    }
  }
  SUBCASE("radius saturation and monotonicity in alpha") {
    KernelSpec wide = ks;
    wide.radius = 100;
    for (auto [t, s] : {std::pair{4.0, 1.0}, {12.0, 6.0}, {25.0, 20.0}}) {
      CHECK(kernel_K(ks, t, s).value == kernel_K(wide, t, s).value);
      KernelSpec bigger = ks;
      bigger.alpha = 0.2;
      CHECK(kernel_K(bigger, t, s).value < kernel_K(ks, t, s).value);
    }
  }
  SUBCASE("boundary maximizer is reported") {
    KernelSpec tiny = ks;
    tiny.radius = 40;
    CHECK_THROWS_AS(kernel_K(tiny, 100.0, 99.0), Error);
  }
  SUBCASE("moments") {
    const auto m0 = kernel_moment(ks, 0.1, 1e-4);
    CHECK(m0.moment < 1e-3);
    CHECK(m0.moment > 0.0);
    const auto m = kernel_moment(ks, 0.1, 10.0);
    CHECK(m.ratio == Rel(m.moment / m.bracket));
    CHECK(m.special_applies);
    CHECK(m.moment <= m.special);
    KernelSpec g2 = ks;
    g2.gamma = 2.0;
    CHECK(!kernel_moment(g2, 0.2, 10.0).special_applies);
    CHECK_THROWS_AS(kernel_moment(ks, 1.5, 10.0), Error);
  }
}

TEST_CASE("decay fits") {
  std::vector<double> t, s, d;
  for (int i = 0; i <= 1200; ++i) {
    t.push_back(0.05 * i);
    s.push_back(std::abs(std::exp(-0.1 * t.back()) * std::cos(1.2 * t.back())));
    d.push_back(std::exp(-0.2 * t.back()));
  }
  const auto fit = fit_decay(t, s);
  CHECK(fit.gamma == Rel(0.1).epsilon(1e-3));
  CHECK(fit.omega == Rel(1.2).epsilon(1e-3));
  CHECK(fit.goodness > 0.999999);
  const auto pure = fit_decay(t, d);
  CHECK(pure.gamma == Rel(0.2).epsilon(1e-9));
  CHECK(pure.omega == 0.0);

  std::mt19937_64 rng(77);
  std::normal_distribution<double> g;
  for (int seed = 0; seed < 20; ++seed) {
    std::vector<double> noisy = s;
    for (auto& x : noisy) x *= 1.0 + 0.01 * g(rng);
    const auto nf = fit_decay(t, noisy);
    CHECK(nf.gamma == Rel(0.1).epsilon(0.05));
    CHECK(nf.goodness < 1.0);
  }

  const auto w = fit_decay(t, s, 10.0, 40.0);
  CHECK(w.samples == 601);
  CHECK(w.gamma == Rel(0.1).epsilon(1e-3));
  CHECK_THROWS_AS(fit_decay(t, s, 10.0, 10.5), Error);
  auto zero = s;
  zero[100] = 0.0;
  CHECK_THROWS_AS(fit_decay(t, zero), Error);
  auto back = t;
  std::swap(back[5], back[6]);
  CHECK_THROWS_AS(fit_decay(back, s), Error);
}
