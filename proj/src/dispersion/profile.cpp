#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "qlandau/core/error.hpp"
#include "qlandau/dispersion/dispersion.hpp"

namespace qlandau {

namespace gk = boost::math::quadrature;

double polylog_3_2_neg_series(double x) {
  require(x >= 0.0 && x <= 1.0, "polylog_3_2_neg_series: needs 0 <= x <= 1");
  if (x == 0.0) return 0.0;
  // sum_{k>=0} (-1)^k a_k with a_k = x^{k+1} / (k+1)^{3/2} equals -Li_{3/2}(-x).
  constexpr int n = 40;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d, s = 0.0, xp = x;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * xp / std::pow(k + 1.0, 1.5);
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
    xp *= x;
  }
  return -s / d;
}

double polylog_3_2_neg_quadrature(double x) {
  require(x >= 0.0 && std::isfinite(x), "polylog_3_2_neg_quadrature: needs finite x >= 0");
  if (x == 0.0) return 0.0;
  const double mu = std::log(x);
  // Fermi occupation 1 / (e^{u^2 - mu} + 1), evaluated without overflow.
  auto f = [mu](double u) {
    const double y = u * u - mu;
    const double occ = y > 0.0 ? std::exp(-y) / (1.0 + std::exp(-y)) : 1.0 / (std::exp(y) + 1.0);
    return u * u * occ;
  };
  const double edge = std::sqrt(std::max(mu, 0.0));
  const double top = std::sqrt(std::max(mu, 0.0) + 60.0);
  double s = 0.0;
  if (edge > 0.0) s += gk::gauss_kronrod<double, 31>::integrate(f, 0.0, edge, 20, 1e-15);
  s += gk::gauss_kronrod<double, 31>::integrate(f, edge, top, 20, 1e-15);
  return -2.0 / std::sqrt(std::numbers::pi) * 2.0 * s;
}

double polylog_3_2_neg(double x) { return x <= 1.0 ? polylog_3_2_neg_series(x) : polylog_3_2_neg_quadrature(x); }

namespace {

// N e^{mu/T} = 1 / (sqrt(2 pi) (-Li_{3/2}(-x) / x)), x = e^{mu/T}.
double scaled_normalization(double mu_over_T) {
  if (!std::isfinite(mu_over_T) || mu_over_T > 10.0) {
    fail(ErrorKind::invalid_argument, "fd_normalization: mu/T must be finite and <= 10");
  }
  const double x = std::exp(mu_over_T);
  const double r = x < 1e-8 ? 1.0 - x / std::pow(2.0, 1.5) + x * x / std::pow(3.0, 1.5) : -polylog_3_2_neg(x) / x;
  return 1.0 / (std::sqrt(2.0 * std::numbers::pi) * r);
}

}  // namespace

double fd_normalization(double mu_over_T) { return scaled_normalization(mu_over_T) * std::exp(-mu_over_T); }

BackgroundProfile BackgroundProfile::maxwellian(const PhysicalParams& params) {
  return {Variant::maxwellian, params.vT(), params.mu_over_T(), 1.0 / std::sqrt(2.0 * std::numbers::pi)};
}

BackgroundProfile BackgroundProfile::fermi_reduced(const PhysicalParams& params) {
  return {Variant::fermi_reduced, params.vT(), params.mu_over_T(), scaled_normalization(params.mu_over_T())};
}

BackgroundProfile BackgroundProfile::vacuum(const PhysicalParams& params) {
  return {Variant::vacuum, params.vT(), params.mu_over_T(), 0.0};
}

std::string BackgroundProfile::name() const {
  switch (variant_) {
    case Variant::maxwellian: return "maxwellian";
    case Variant::fermi_reduced: return "fermi_reduced";
    case Variant::vacuum: return "vacuum";
  }
  return "unknown";
}

namespace {

// e^{-mu} ln(1 + e^{mu - h}), h = v^2 / 2 vT^2.
double scaled_log(double h, double mu) {
  const double y = mu - h;
  if (y < -30.0) return std::exp(-h) * (1.0 - 0.5 * std::exp(y));
  return std::exp(-mu) * (y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y)));
}

cplx scaled_log(cplx h, double mu) {
  const cplx e = std::exp(-h), w = std::exp(mu) * e;
  if (std::abs(w) < 1e-4) return e * (1.0 - w * (0.5 - w * (1.0 / 3.0 - 0.25 * w)));
  return std::exp(std::log(std::log(1.0 + w)) - mu);
}

}  // namespace

double BackgroundProfile::operator()(double v) const {
  const double s = v / vT_;
  switch (variant_) {
    case Variant::maxwellian: return norm_ / vT_ * std::exp(-0.5 * s * s);
    case Variant::fermi_reduced: return norm_ / vT_ * scaled_log(0.5 * s * s, mu_);
    case Variant::vacuum: return 0.0;
  }
  return 0.0;
}

double BackgroundProfile::derivative(double v) const {
  const double s = v / vT_;
  switch (variant_) {
    case Variant::maxwellian: return -s / vT_ * (*this)(v);
    case Variant::fermi_reduced: {
      const double h = 0.5 * s * s;
      return -norm_ / vT_ * (s / vT_) * std::exp(-h) / (1.0 + std::exp(mu_ - h));
    }
    case Variant::vacuum: return 0.0;
  }
  return 0.0;
}

cplx BackgroundProfile::operator()(cplx z) const {
  const cplx s = z / vT_;
  switch (variant_) {
    case Variant::maxwellian: return norm_ / vT_ * std::exp(-0.5 * s * s);
    case Variant::fermi_reduced: return norm_ / vT_ * scaled_log(0.5 * s * s, mu_);
    case Variant::vacuum: return 0.0;
  }
  return 0.0;
}

cplx BackgroundProfile::derivative(cplx z) const {
  const cplx s = z / vT_;
  switch (variant_) {
    case Variant::maxwellian: return -s / vT_ * (*this)(z);
    case Variant::fermi_reduced: {
      const cplx e = std::exp(-0.5 * s * s);
      return -norm_ / vT_ * (s / vT_) * e / (1.0 + std::exp(mu_) * e);
    }
    case Variant::vacuum: return 0.0;
  }
  return 0.0;
}

double BackgroundProfile::normalization() const noexcept {
  return variant_ == Variant::fermi_reduced ? norm_ * std::exp(-mu_) : norm_;
}

double BackgroundProfile::cutoff() const { return vT_ * (10.0 + std::sqrt(2.0 * std::max(mu_, 0.0))); }

double BackgroundProfile::mass() const {
  if (variant_ == Variant::vacuum) return 0.0;
  const double V = cutoff();
  auto f = [this](double v) { return (*this)(v); };
  return 2.0 * gk::gauss_kronrod<double, 31>::integrate(f, 0.0, V, 20, 1e-14);
}

double fermi_reduced(double v, const BackgroundProfile& profile) {
  require(profile.variant() == BackgroundProfile::Variant::fermi_reduced, "fermi_reduced: profile is not Fermi");
  return profile(v);
}

}  // namespace qlandau
