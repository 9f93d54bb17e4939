#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qlandau/analysis/analysis.hpp"
#include "qlandau/core/state.hpp"

namespace qtest {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline double gauss(double v, double vT = 1.0) {
  return std::exp(-0.5 * v * v / (vT * vT)) / (std::sqrt(2.0 * std::numbers::pi) * vT);
}

/// Hermitian eta-space data supported on |l| <= lmax, |j| <= jmax, so the field is real.
inline qlandau::SpectralData random_field(std::mt19937_64& rng, std::size_t nx = 16, std::size_t nv = 64,
                                          long lmax = 3, long jmax = 6, double L = 4.0 * std::numbers::pi,
                                          double vmax = 6.0) {
  std::normal_distribution<double> g;
  std::vector<qlandau::cplx> e(nx * nv, 0.0);
  const auto at = [&](long l, long j) -> qlandau::cplx& {
    const auto li = static_cast<std::size_t>((l + static_cast<long>(nx)) % static_cast<long>(nx));
    const auto ji = static_cast<std::size_t>((j + static_cast<long>(nv)) % static_cast<long>(nv));
    return e[li * nv + ji];
  };
  for (long l = -lmax; l <= lmax; ++l) {
    for (long j = -jmax; j <= jmax; ++j) {
      if (l < 0 || (l == 0 && j < 0)) continue;
      const qlandau::cplx c(g(rng), (l == 0 && j == 0) ? 0.0 : g(rng));
      at(l, j) = c;
      at(-l, -j) = std::conj(c);
    }
  }
  return qlandau::SpectralData::from_eta(nx, nv, L, vmax, std::move(e));
}

}  // namespace qtest
