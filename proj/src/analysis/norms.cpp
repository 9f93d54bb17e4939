#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qlandau/analysis/analysis.hpp"
#include "qlandau/core/error.hpp"
#include "qlandau/core/fft.hpp"

namespace qlandau {

std::string family_name(NormFamily f) {
  switch (f) {
    case NormFamily::C: return "C";
    case NormFamily::F: return "F";
    case NormFamily::Z: return "Z";
    case NormFamily::Y: return "Y";
  }
  return "?";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Context {
  const SpectralData& f;
  const NormSpec& spec;
  std::size_t max_mode;
  bool p_inf;

  // x-only data carries no v extent: v integrals become v averages.
  double vscale() const { return f.x_only() ? 1.0 / (2.0 * f.v_max()) : 1.0; }

  bool active(std::size_t l) const { return static_cast<std::size_t>(std::abs(f.mode(l))) <= max_mode; }
  double shifted_eta(std::size_t l, std::size_t j) const {
    return f.eta(j) + spec.tau * static_cast<double>(f.mode(l)) / f.box_length();
  }
  double weight(std::size_t l, std::size_t j) const {
    return std::exp(kTwoPi * spec.mu * std::abs(static_cast<double>(f.mode(l))) +
                    kTwoPi * spec.lambda * std::abs(shifted_eta(l, j)));
  }
  bool boundary(std::size_t l, std::size_t j) const {
    const long js = std::abs(signed_index(j, f.nv()));
    const long ls = std::abs(f.mode(l));
    return js >= static_cast<long>(f.nv() / 2) - 1 || ls >= static_cast<long>(f.nx() / 2) - 1;
  }
  double lp(const std::vector<cplx>& g, double measure) const {
    double s = 0.0;
    for (const auto& z : g) s = p_inf ? std::max(s, std::abs(z)) : s + std::abs(z);
    return p_inf ? s : s * measure;
  }
};

// Weighted boundary share; throws if the data is not resolved at the scale of the weights.
double boundary_weight(const Context& c, double* total_out) {
  double total = 0.0, edge = 0.0, worst = 0.0;
  std::size_t wl = 0, wj = 0;
  for (std::size_t l = 0; l < c.f.nx(); ++l) {
    if (!c.active(l)) continue;
    for (std::size_t j = 0; j < c.f.nv(); ++j) {
      const double w = c.weight(l, j) * std::abs(c.f.ftilde(l, j));
      total += w;
      if (c.boundary(l, j)) {
        edge += w;
        if (w > worst) {
          worst = w;
          wl = l;
          wj = j;
        }
      }
    }
  }
  if (!std::isfinite(total) || (total > 0.0 && edge > c.spec.boundary_tolerance * total)) {
    std::ostringstream msg;
    msg << "norm_hybrid(" << family_name(c.spec.family) << "): weighted data not negligible at the grid boundary"
        << " (mode l = " << c.f.mode(wl) << ", eta = " << c.f.eta(wj) << ", share " << (total > 0 ? edge / total : 0)
        << "); lambda/mu too large for the resolution";
    fail(ErrorKind::resolution, msg.str());
  }
  *total_out = total;
  return edge;
}

// Tail of a positive series from its last two terms; throws when the terms do not decrease.
double series_tail(double last, double prev, const NormSpec& spec) {
  if (last == 0.0) return 0.0;
  if (prev <= 0.0) return last;
  const double r = last / prev;
  if (r >= 1.0) {
    std::ostringstream msg;
    msg << "norm_hybrid(" << family_name(spec.family) << "): derivative series not convergent by order "
        << spec.max_order << " (term ratio " << r << ")";
    fail(ErrorKind::resolution, msg.str());
  }
  return last * r / (1.0 - r);
}

cplx ipow(cplx z, std::size_t n) {
  cplx r = 1.0;
  for (std::size_t i = 0; i < n; ++i) r *= z;
  return r;
}

std::vector<double> inv_factorial_powers(double x, std::size_t n) {
  std::vector<double> out(n + 1);
  out[0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) out[i] = out[i - 1] * x / static_cast<double>(i);
  return out;
}

NormResult norm_F_or_Y(const Context& c, bool sup) {
  double total = 0.0;
  const double edge = boundary_weight(c, &total);
  NormResult r;
  r.max_mode = c.max_mode;
  double best = 0.0, best_edge = 0.0;
  for (std::size_t l = 0; l < c.f.nx(); ++l) {
    if (!c.active(l)) continue;
    for (std::size_t j = 0; j < c.f.nv(); ++j) {
      const double w = c.weight(l, j) * std::abs(c.f.ftilde(l, j));
      best = std::max(best, w);
      if (c.boundary(l, j)) best_edge = std::max(best_edge, w);
    }
  }
  if (sup) {
    r.value = best * c.vscale();
    r.truncation_error = best_edge * c.vscale();
  } else {
    r.value = total * c.f.deta();
    r.truncation_error = edge * c.f.deta();
  }
  return r;
}

NormResult norm_Z(const Context& c) {
  double total = 0.0;
  const double edge = boundary_weight(c, &total);
  const std::size_t N = c.spec.max_order;
  const auto lam = inv_factorial_powers(c.spec.lambda, N);
  NormResult r;
  r.max_mode = c.max_mode;
  r.max_order = N;
  double value = 0.0, tail = 0.0;
  std::vector<cplx> row(c.f.nv());
  for (std::size_t l = 0; l < c.f.nx(); ++l) {
    if (!c.active(l)) continue;
    const double xw = std::exp(kTwoPi * c.spec.mu * std::abs(static_cast<double>(c.f.mode(l))));
    std::vector<double> terms(N + 1, 0.0);
    for (std::size_t j = 0; j < c.f.nv(); ++j) row[j] = c.f.ftilde(l, j);
    for (std::size_t n = 0; n <= N; ++n) {
      if (n > 0) {
        for (std::size_t j = 0; j < c.f.nv(); ++j) row[j] *= cplx(0.0, kTwoPi * c.shifted_eta(l, j));
      }
      terms[n] = lam[n] * c.lp(c.f.v_profile(l, row), c.f.dv() * c.vscale());
      if (lam[n] == 0.0) break;
    }
    double s = 0.0;
    for (double t : terms) s += t;
    value += xw * s;
    if (N >= 1) tail += xw * series_tail(terms[N], terms[N - 1], c.spec);
  }
  r.value = value;
  r.truncation_error = tail + (total > 0.0 ? edge / total * value : 0.0);
  return r;
}

NormResult norm_C(const Context& c) {
  double total = 0.0;
  const double edge = boundary_weight(c, &total);
  const SpectralData& f = c.f;
  const std::size_t N = c.spec.max_order, nx = f.nx(), nv = f.nv();
  const auto lam = inv_factorial_powers(c.spec.lambda, N);
  const auto mu = inv_factorial_powers(c.spec.mu, N);
  bool x_dependent = false;
  for (std::size_t l = 1; l < nx && !x_dependent; ++l) {
    if (!c.active(l)) continue;
    for (std::size_t j = 0; j < nv; ++j) {
      if (f.ftilde(l, j) != 0.0) {
        x_dependent = true;
        break;
      }
    }
  }
  const std::size_t M = x_dependent ? N : 0;
  std::vector<std::vector<double>> term(M + 1, std::vector<double>(N + 1, 0.0));
  const Fft1d xfft(nx);
  ComplexBuffer col(nx);
  std::vector<cplx> row(nv);
  std::vector<cplx> g(nx * nv);
  for (std::size_t m = 0; m <= M; ++m) {
    if (mu[m] == 0.0) break;
    for (std::size_t n = 0; n <= N; ++n) {
      if (lam[n] == 0.0) break;
      for (std::size_t l = 0; l < nx; ++l) {
        const double ls = static_cast<double>(f.mode(l));
        const cplx xm = ipow(cplx(0.0, kTwoPi * ls), m);
        for (std::size_t j = 0; j < nv; ++j) {
          const cplx vn = ipow(cplx(0.0, kTwoPi * c.shifted_eta(l, j)), n);
          row[j] = c.active(l) ? xm * vn * f.ftilde(l, j) : 0.0;
        }
        const auto prof = f.v_profile(l, row);
        std::copy(prof.begin(), prof.end(), g.begin() + l * nv);
      }
      // Back to x: g(x_i, v) = sum_l G(l, v) e^{2 pi i l x_i / L}.
      for (std::size_t mv = 0; mv < nv; ++mv) {
        for (std::size_t l = 0; l < nx; ++l) col[l] = g[l * nv + mv];
        xfft.backward(col.span());
        for (std::size_t i = 0; i < nx; ++i) g[i * nv + mv] = col[i];
      }
      term[m][n] = lam[n] * mu[m] * c.lp(g, f.dv() * c.vscale() / static_cast<double>(nx));
    }
  }
  NormResult r;
  r.max_mode = c.max_mode;
  r.max_order = N;
  double value = 0.0;
  for (const auto& tr : term) {
    for (double t : tr) value += t;
  }
  double tail = 0.0;
  if (N >= 1) {
    double last = 0.0, prev = 0.0;
    for (std::size_t m = 0; m <= M; ++m) {
      last += term[m][N];
      prev += term[m][N - 1];
    }
    tail += series_tail(last, prev, c.spec);
    if (M >= 1) {
      last = prev = 0.0;
      for (std::size_t n = 0; n <= N; ++n) {
        last += term[M][n];
        prev += term[M - 1][n];
      }
      tail += series_tail(last, prev, c.spec);
    }
  }
  r.value = value;
  r.truncation_error = tail + (total > 0.0 ? edge / total * value : 0.0);
  return r;
}

}  // namespace

NormResult norm_hybrid(const SpectralData& f, const NormSpec& spec) {
  require(spec.lambda >= 0.0 && spec.mu >= 0.0, "norm_hybrid: lambda and mu must be >= 0");
  require(std::isfinite(spec.tau), "norm_hybrid: tau must be finite");
  require(spec.p == 1 || spec.p <= 0, "norm_hybrid: p must be 1 or infinity (<= 0)");
  const std::size_t all = f.nx() / 2;
  const Context c{f, spec, spec.max_mode ? std::min(*spec.max_mode, all) : all, spec.p <= 0};
  switch (spec.family) {
    case NormFamily::F: return norm_F_or_Y(c, false);
    case NormFamily::Y: return norm_F_or_Y(c, true);
    case NormFamily::Z: return norm_Z(c);
    case NormFamily::C: return norm_C(c);
  }
  fail(ErrorKind::invalid_argument, "norm_hybrid: unknown family");
}

NormResult norm_hybrid(const WignerState& w, const NormSpec& spec) {
  return norm_hybrid(SpectralData::from_state(w), spec);
}

}  // namespace qlandau
