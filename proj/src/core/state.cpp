#include "qlandau/core/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlandau/core/error.hpp"

namespace qlandau {

WignerState::WignerState(PhaseSpaceGrid grid) : grid_(grid), values_(grid.size(), 0.0) {}

WignerState::WignerState(PhaseSpaceGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.size(), "WignerState: value count does not match grid");
}

double WignerState::mass() const noexcept {
  double s = 0.0;
  for (double w : values_) s += w;
  return s * grid_.dx() * grid_.dv();
}

double WignerState::l2_norm() const noexcept {
  double s = 0.0;
  for (double w : values_) s += w * w;
  return std::sqrt(s * grid_.dx() * grid_.dv());
}

double WignerState::max_abs() const noexcept {
  double m = 0.0;
  for (double w : values_) m = std::max(m, std::abs(w));
  return m;
}

bool WignerState::homogeneous(double tol) const noexcept {
  const double scale = std::max(max_abs(), 1e-300);
  const std::size_t nv = grid_.nv();
  for (std::size_t ix = 1; ix < grid_.nx(); ++ix) {
    for (std::size_t iv = 0; iv < nv; ++iv) {
      if (std::abs(values_[ix * nv + iv] - values_[iv]) > tol * scale) return false;
    }
  }
  return true;
}

SpectralField::SpectralField(std::size_t nx, double box_length) : coeffs_(nx), L_(box_length) {}

SpectralField::SpectralField(std::vector<cplx> coeffs, double box_length)
    : coeffs_(std::move(coeffs)), L_(box_length) {}

SpectralField SpectralField::from_real(const std::vector<double>& values, double box_length) {
  std::vector<cplx> c(values.begin(), values.end());
  Fft1d(c.size()).forward(c);
  const std::size_t n = c.size();
  // Exact Hermitian symmetry; the Nyquist bin of a real field is real.
  for (std::size_t j = 1; j < n / 2; ++j) {
    const cplx avg = 0.5 * (c[j] + std::conj(c[n - j]));
    c[j] = avg;
    c[n - j] = std::conj(avg);
  }
  c[0] = c[0].real();
  if (n >= 2) c[n / 2] = c[n / 2].real();
  return SpectralField(std::move(c), box_length);
}

cplx SpectralField::mode(long j) const noexcept {
  const long n = static_cast<long>(coeffs_.size());
  long idx = j % n;
  if (idx < 0) idx += n;
  return coeffs_[static_cast<std::size_t>(idx)];
}

double SpectralField::amplitude(long j) const noexcept {
  return std::abs(mode(j)) / static_cast<double>(coeffs_.size());
}

std::vector<double> SpectralField::to_real() const { return shifted(0.0); }

std::vector<double> SpectralField::shifted(double shift) const {
  const std::size_t n = coeffs_.size();
  std::vector<cplx> c(coeffs_);
  if (shift != 0.0) {
    for (std::size_t j = 0; j < n; ++j) {
      const double k = 2.0 * std::numbers::pi * static_cast<double>(signed_index(j, n)) / L_;
      c[j] *= std::polar(1.0, k * shift);
    }
  }
  Fft1d(n).inverse(c);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = c[i].real();
  return out;
}

SpectralField SpectralField::derivative(int order) const {
  const std::size_t n = coeffs_.size();
  std::vector<cplx> c(coeffs_);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = (j == n / 2) ? 0.0 : 2.0 * std::numbers::pi * static_cast<double>(signed_index(j, n)) / L_;
    c[j] *= std::pow(cplx(0.0, k), order);
  }
  return SpectralField(std::move(c), L_);
}

double SpectralField::hermitian_defect() const noexcept {
  const std::size_t n = coeffs_.size();
  double d = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    d = std::max(d, std::abs(coeffs_[(n - j) % n] - std::conj(coeffs_[j])));
  }
  return d;
}

WignerState maxwellian_profile(const PhaseSpaceGrid& grid, const PhysicalParams& params) {
  WignerState w(grid);
  const double vT = params.vT();
  const double norm = params.n0() / std::sqrt(2.0 * std::numbers::pi * vT * vT);
  std::vector<double> row(grid.nv());
  for (std::size_t m = 0; m < grid.nv(); ++m) {
    const double v = grid.v(m);
    row[m] = norm * std::exp(-v * v / (2.0 * vT * vT));
  }
  for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
    std::copy(row.begin(), row.end(), w.values().begin() + static_cast<long>(ix * grid.nv()));
  }
  return w;
}

WignerState perturbed(const WignerState& background, double eps, int mode) {
  const auto& g = background.grid();
  WignerState w(g);
  const double k = 2.0 * std::numbers::pi * mode / g.box_length();
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    const double f = 1.0 + eps * std::cos(k * g.x(ix));
    for (std::size_t iv = 0; iv < g.nv(); ++iv) w(ix, iv) = f * background(ix, iv);
  }
  return w;
}

}  // namespace qlandau
