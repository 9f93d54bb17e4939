#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "qlandau/analysis/analysis.hpp"
#include "qlandau/core/error.hpp"

namespace qlandau {

namespace {

void check_spec(const KernelSpec& spec) {
  require(spec.alpha > 0.0 && spec.alpha < 1.0, "kernel: alpha must lie in (0, 1)");
  require(spec.gamma >= 1.0, "kernel: gamma must be >= 1");
  require(spec.radius >= 2, "kernel: radius must be >= 2");
}

struct Best {
  double log_value = -std::numeric_limits<double>::infinity();
  long k = 0, l = 0;
};

double log_term(const KernelSpec& spec, double t, double s, long k, long l) {
  const double a = spec.alpha;
  const double drift = t > 0.0 ? (t - s) / t : 0.0;
  const double d = std::abs(static_cast<double>(k - l));
  return -a * std::abs(static_cast<double>(l)) - a * drift * d -
         a * std::abs(static_cast<double>(k) * (t - s) + static_cast<double>(l) * s) - std::log1p(std::pow(d, spec.gamma));
}

void consider(Best& best, const KernelSpec& spec, double t, double s, long k, long l) {
  if (k == 0 || k == l) return;
  const double lv = log_term(spec, t, s, k, l);
  if (lv > best.log_value) best = {lv, k, l};
}

Best search(const KernelSpec& spec, double t, double s) {
  Best best;
  for (long l = -spec.radius; l <= spec.radius; ++l) {
    if (l == 0) continue;
    for (long k = -spec.radius; k <= spec.radius; ++k) consider(best, spec, t, s, k, l);
  }
  return best;
}

// For fixed l the k-dependence is monotone away from [l, k*] (k* the resonance) and convex
// inside it once |k - l| clears the concave part of log(1 + d^gamma); so the maximum sits at
// a short list of candidates. Rows |l| are added until e^{-alpha |l|} / 2 cannot compete.
Best search_unbounded(const KernelSpec& spec, double t, double s) {
  Best best;
  const long d0 = 2 + static_cast<long>(std::ceil(std::pow(std::max(spec.gamma - 1.0, 0.0), 1.0 / spec.gamma)));
  for (long n = 1;; ++n) {
    if (best.k != 0 && -spec.alpha * static_cast<double>(n) - std::log(2.0) < best.log_value) break;
    for (long l : {n, -n}) {
      for (long d = -d0; d <= d0; ++d) consider(best, spec, t, s, l + d, l);
      for (long k : {-1L, 1L}) consider(best, spec, t, s, k, l);
      if (t - s > 0.0) {
        const double ks = -static_cast<double>(l) * s / (t - s);
        if (std::abs(ks) < 1e15) {
          const long kf = static_cast<long>(std::floor(ks));
          for (long k = kf - 1; k <= kf + 2; ++k) consider(best, spec, t, s, k, l);
        }
      }
    }
  }
  return best;
}

// e^{-eps t} int K(t, s) e^{eps s} ds, piecewise over segments where one pair (k, l) is maximal.
// On such a segment the integrand is (1 + s) times an exponential of a piecewise-linear
// function of s, with one possible kink at the pair's own resonance.
struct Moments {
  const KernelSpec& spec;
  double eps, t;

  double pair_integral(double a, double b, long k, long l) const {
    const auto f = [&](double s) { return (1.0 + s) * std::exp(log_term(spec, t, s, k, l) + eps * (s - t)); };
    const double res = static_cast<double>(k) * t / static_cast<double>(k - l);
    if (res > a && res < b) return pair_integral(a, res, k, l) + pair_integral(res, b, k, l);
    return boost::math::quadrature::gauss<double, 15>::integrate(f, a, b);
  }

  double integrate(double a, double b, const Best& pa, const Best& pb, int depth) const {
    const double mid = 0.5 * (a + b);
    const Best pm = search_unbounded(spec, t, mid);
    const bool same = pa.k == pb.k && pa.l == pb.l && pm.k == pa.k && pm.l == pa.l;
    if (same) return pair_integral(a, b, pa.k, pa.l);
    if (depth >= 6) {
      // Clusters of switches near s = t: the supremum is continuous, so a plain rule suffices.
      const auto f = [&](double s) {
        return (1.0 + s) * std::exp(search_unbounded(spec, t, s).log_value + eps * (s - t));
      };
      return boost::math::quadrature::gauss<double, 15>::integrate(f, a, b);
    }
    return integrate(a, mid, pa, pm, depth + 1) + integrate(mid, b, pm, pb, depth + 1);
  }
};

}  // namespace

KernelValue kernel_K(const KernelSpec& spec, double t, double s) {
  check_spec(spec);
  require(s >= 0.0 && s <= t, "kernel_K: need 0 <= s <= t");
  const Best b = search(spec, t, s);
  if (std::abs(b.k) == spec.radius || std::abs(b.l) == spec.radius) {
    std::ostringstream msg;
    msg << "kernel_K: supremum attained on the search boundary (k = " << b.k << ", l = " << b.l
        << ") at t = " << t << ", s = " << s << "; increase the radius";
    fail(ErrorKind::resolution, msg.str());
  }
  return {(1.0 + s) * std::exp(b.log_value), b.k, b.l};
}

KernelValue kernel_K_exact(const KernelSpec& spec, double t, double s) {
  check_spec(spec);
  require(s >= 0.0 && s <= t, "kernel_K_exact: need 0 <= s <= t");
  const Best b = search_unbounded(spec, t, s);
  return {(1.0 + s) * std::exp(b.log_value), b.k, b.l};
}

KernelMoment kernel_moment(const KernelSpec& spec, double eps, double t) {
  check_spec(spec);
  require(eps > 0.0 && eps < 1.0, "kernel_moment: eps must lie in (0, 1)");
  require(t >= 0.0, "kernel_moment: t must be >= 0");
  const double a = spec.alpha, g = spec.gamma;
  KernelMoment out;
  const double la = std::log(1.0 / a);
  out.special_applies = eps <= a;
  if (t > 0.0) {
    out.bracket = 1.0 / (a * std::pow(eps, g) * std::pow(t, g - 1.0)) + la / (a * std::pow(eps, g) * std::pow(t, g)) +
                  1.0 / (a * a * std::pow(eps, 1.0 + g) * std::pow(t, 1.0 + g)) +
                  (1.0 / (a * a * a) + la / (a * a * eps)) * std::exp(-eps * t / 4.0) +
                  std::exp(-a * t / 2.0) / (a * a * a);
    out.special = g == 1.0 ? (1.0 / eps + 1.0 / (eps * eps * t)) / (a * a * a)
                           : 1.0 / (a * a * a * std::pow(eps, 1.0 + g) * std::pow(t, g - 1.0));
  }
  if (t == 0.0) return out;

  Moments m{spec, eps, t};
  const std::size_t panels = 32 + static_cast<std::size_t>(std::ceil(4.0 * t));
  double total = 0.0;
  Best left = search_unbounded(spec, t, 0.0);
  for (std::size_t i = 0; i < panels; ++i) {
    const double a0 = t * static_cast<double>(i) / static_cast<double>(panels);
    const double b0 = t * static_cast<double>(i + 1) / static_cast<double>(panels);
    const Best right = search_unbounded(spec, t, b0);
    total += m.integrate(a0, b0, left, right, 0);
    left = right;
  }
  if (!std::isfinite(total)) fail(ErrorKind::numerical_abort, "kernel_moment: quadrature failed");
  out.moment = total;
  out.ratio = out.bracket > 0.0 ? total / out.bracket : 0.0;
  return out;
}

}  // namespace qlandau
