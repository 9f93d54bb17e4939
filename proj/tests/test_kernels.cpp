#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "doctest.h"
#include "approx.hpp"
#include "qlandau/kernels/kernels.hpp"
#include "qlandau/wigner/wigner.hpp"

using namespace qlandau;
using kernels::cplx;

namespace {

std::vector<cplx> random_complex(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2, 2);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {u(rng), u(rng)};
  return v;
}

std::vector<double> random_real(std::size_t n, unsigned seed, double scale) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const kernels::KernelTable* avx = kernels::avx2_table();
  if (avx == nullptr || !kernels::avx2_available()) {
    MESSAGE("AVX2 backend not available; equivalence skipped");
    return;
  }
  const auto& ref = kernels::scalar_table();
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1025u}) {
    CAPTURE(n);
    auto a = random_complex(n, 1), b = random_complex(n, 2);
    auto a2 = a;
    ref.cmul(a.data(), b.data(), n);
    avx->cmul(a2.data(), b.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - a2[i]) <= 1e-15 * (1.0 + std::abs(a[i])));

    auto c = random_complex(n, 3), c2 = c;
    const auto theta = random_real(n, 4, 50.0);
    ref.phase_kick(c.data(), theta.data(), 0.37, n);
    avx->phase_kick(c2.data(), theta.data(), 0.37, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(c[i] - c2[i]) <= 1e-14 * (1.0 + std::abs(c[i])));

    const auto x = random_real(n, 5, 200.0);
    std::vector<double> s(n), co(n), s2(n), co2(n);
    ref.sincos(x.data(), s.data(), co.data(), n);
    avx->sincos(x.data(), s2.data(), co2.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(s[i] - s2[i]) <= 1e-14);
      CHECK(std::abs(co[i] - co2[i]) <= 1e-14);
    }
  }
  for (std::size_t rows : {1u, 5u}) {
    for (std::size_t cols : {1u, 6u, 33u, 256u}) {
      const auto a = random_complex(rows * cols, 6);
      const auto w = random_real(cols, 7, 1.0);
      std::vector<double> r1(rows), r2(rows);
      ref.row_real_sums(a.data(), rows, cols, r1.data());
      avx->row_real_sums(a.data(), rows, cols, r2.data());
      for (std::size_t r = 0; r < rows; ++r) CHECK(r1[r] == Rel(r2[r]).epsilon(1e-13));
      CHECK(ref.weighted_real_sum(a.data(), w.data(), rows, cols) ==
            Rel(avx->weighted_real_sum(a.data(), w.data(), rows, cols)).epsilon(1e-13));
    }
  }
}

TEST_CASE("a nonlinear run is backend independent") {
  if (!kernels::avx2_available()) return;
  const double L = 2.0 * std::numbers::pi / 0.5;
  const auto p = PhysicalParams::normalized(0.3, L);
  const auto g = make_grid(16, 128, L, 8.0);
  const auto w0 = perturbed(maxwellian_profile(g, p), 0.2, 1);
  EvolutionConfig c;
  c.dt = 0.1;
  c.t_end = 5.0;
  c.mode = EvolutionMode::nonlinear;
  REQUIRE(kernels::select(kernels::Backend::scalar));
  const auto a = evolve(w0, InteractionKernel::coulomb(), p, c);
  REQUIRE(kernels::select(kernels::Backend::avx2));
  const auto b = evolve(w0, InteractionKernel::coulomb(), p, c);
  const auto& fa = a.final_state->values();
  const auto& fb = b.final_state->values();
  double m = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) m = std::max(m, std::abs(fa[i] - fb[i]));
  CHECK(m < 1e-12);
}

namespace {
const kernels::Backend startup_backend = kernels::selected();
}

TEST_CASE("QW_SIMD picks the startup backend") {
  const char* env = std::getenv("QW_SIMD");
  const bool forced = env != nullptr && std::string(env) == "scalar";
  const auto expect = (!forced && kernels::avx2_available()) ? kernels::Backend::avx2 : kernels::Backend::scalar;
  CHECK(startup_backend == expect);
  CHECK(std::string(kernels::active().name).size() > 0);
}
