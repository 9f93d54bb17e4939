#include <algorithm>

#include "qlandau/analysis/analysis.hpp"
#include "qlandau/core/error.hpp"
#include "qlandau/core/fft.hpp"

namespace qlandau {

namespace {

void check_dims(std::size_t nx, std::size_t nv, double L, double v_max, std::size_t size) {
  require(is_power_of_two(nx) && is_power_of_two(nv) && nx >= 2 && nv >= 2,
          "SpectralData: sizes must be powers of two >= 2");
  require(L > 0.0 && v_max > 0.0, "SpectralData: extents must be positive");
  require(size == nx * nv, "SpectralData: data size must be nx * nv");
}

}  // namespace

double SpectralData::eta(std::size_t j) const noexcept {
  return static_cast<double>(signed_index(j, nv_)) * deta();
}

long SpectralData::mode(std::size_t l) const noexcept { return signed_index(l, nx_); }

SpectralData SpectralData::from_state(const WignerState& w) {
  const auto& g = w.grid();
  SpectralData d;
  d.nx_ = g.nx();
  d.nv_ = g.nv();
  d.L_ = g.box_length();
  d.v_max_ = g.v_max();
  ComplexBuffer b(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) b[i] = w.values()[i];
  PhaseSpaceFft(g.nx(), g.nv()).x_forward(b.span());
  d.fhat_.resize(g.size());
  const double inv = 1.0 / static_cast<double>(g.nx());
  for (std::size_t i = 0; i < g.size(); ++i) d.fhat_[i] = b[i] * inv;
  d.fill_eta();
  return d;
}

SpectralData SpectralData::from_modes(std::size_t nx, std::size_t nv, double box_length, double v_max,
                                      std::vector<cplx> modes) {
  check_dims(nx, nv, box_length, v_max, modes.size());
  SpectralData d;
  d.nx_ = nx;
  d.nv_ = nv;
  d.L_ = box_length;
  d.v_max_ = v_max;
  d.fhat_ = std::move(modes);
  d.fill_eta();
  return d;
}

SpectralData SpectralData::from_eta(std::size_t nx, std::size_t nv, double box_length, double v_max,
                                    std::vector<cplx> eta_modes) {
  check_dims(nx, nv, box_length, v_max, eta_modes.size());
  SpectralData d;
  d.nx_ = nx;
  d.nv_ = nv;
  d.L_ = box_length;
  d.v_max_ = v_max;
  d.ftilde_ = std::move(eta_modes);
  d.fill_modes();
  return d;
}

SpectralData SpectralData::from_x_field(const std::vector<double>& values, double box_length, std::size_t nv) {
  const std::size_t nx = values.size();
  check_dims(nx, nv, box_length, 1.0, nx * nv);
  std::vector<double> w(nx * nv);
  for (std::size_t i = 0; i < nx; ++i) std::fill(w.begin() + i * nv, w.begin() + (i + 1) * nv, values[i]);
  SpectralData d = from_state(WignerState(make_grid(nx, nv, box_length, 1.0), std::move(w)));
  d.x_only_ = true;
  return d;
}

// f~_j = dv (-1)^j sum_m f^_m e^{-2 pi i jm/nv}.
void SpectralData::fill_eta() {
  const Fft1d fft(nv_);
  ComplexBuffer row(nv_);
  ftilde_.assign(fhat_.size(), 0.0);
  for (std::size_t l = 0; l < nx_; ++l) {
    std::copy(fhat_.begin() + l * nv_, fhat_.begin() + (l + 1) * nv_, row.data());
    fft.forward(row.span());
    for (std::size_t j = 0; j < nv_; ++j) ftilde_[l * nv_ + j] = (j % 2 == 0 ? dv() : -dv()) * row[j];
  }
}

std::vector<cplx> SpectralData::v_profile(std::size_t l, const std::vector<cplx>& eta_row) const {
  require(l < nx_ && eta_row.size() == nv_, "SpectralData::v_profile: bad row");
  const Fft1d fft(nv_);
  ComplexBuffer row(nv_);
  for (std::size_t j = 0; j < nv_; ++j) row[j] = (j % 2 == 0 ? 1.0 : -1.0) * eta_row[j];
  fft.inverse(row.span());
  std::vector<cplx> out(nv_);
  for (std::size_t m = 0; m < nv_; ++m) out[m] = row[m] / dv();
  return out;
}

void SpectralData::fill_modes() {
  fhat_.assign(ftilde_.size(), 0.0);
  std::vector<cplx> r(nv_);
  for (std::size_t l = 0; l < nx_; ++l) {
    std::copy(ftilde_.begin() + l * nv_, ftilde_.begin() + (l + 1) * nv_, r.begin());
    const auto v = v_profile(l, r);
    std::copy(v.begin(), v.end(), fhat_.begin() + l * nv_);
  }
}

SpectralData SpectralData::scaled(cplx c) const {
  SpectralData d = *this;
  for (auto& z : d.fhat_) z *= c;
  for (auto& z : d.ftilde_) z *= c;
  return d;
}

SpectralData SpectralData::x_mean() const {
  SpectralData d = *this;
  for (std::size_t i = nv_; i < d.fhat_.size(); ++i) {
    d.fhat_[i] = 0.0;
    d.ftilde_[i] = 0.0;
  }
  return d;
}

SpectralData SpectralData::density() const {
  SpectralData d = *this;
  d.x_only_ = true;
  for (std::size_t l = 0; l < nx_; ++l) {
    const cplx rho = x_only_ ? fhat_[l * nv_] : ftilde_[l * nv_];
    std::fill(d.fhat_.begin() + l * nv_, d.fhat_.begin() + (l + 1) * nv_, rho);
  }
  d.fill_eta();
  return d;
}

}  // namespace qlandau
