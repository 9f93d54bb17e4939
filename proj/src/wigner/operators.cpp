#include <algorithm>
#include <cmath>

#include "qlandau/core/error.hpp"
#include "qlandau/kernels/kernels.hpp"
#include "qlandau/wigner/wigner.hpp"

namespace qlandau {

WignerPropagator::WignerPropagator(const PhaseSpaceGrid& grid, const PhysicalParams& params)
    : grid_(grid),
      params_(params),
      fft_(grid.nx(), grid.nv()),
      buf_(grid.size()),
      scratch_(grid.size()),
      shift_sine_(grid.size()),
      theta_(grid.size()),
      kinetic_weights_(grid.nv()) {
  const double hbar = params.hbar();
  const double m = params.mass();
  for (std::size_t jk = 0; jk < grid.nx(); ++jk) {
    const double k = grid.k(jk);
    for (std::size_t je = 0; je < grid.nv(); ++je) {
      const double eta = grid.eta(je);
      shift_sine_[grid.index(jk, je)] =
          hbar > 0.0 ? 2.0 * std::sin(k * hbar * eta / (2.0 * m)) / hbar : k * eta / m;
    }
  }
  for (std::size_t iv = 0; iv < grid.nv(); ++iv) {
    const double v = grid.v(iv);
    kinetic_weights_[iv] = 0.5 * m * v * v;
  }
}

void WignerPropagator::load(const WignerState& w) {
  require(w.grid() == grid_, "WignerPropagator: state grid does not match propagator grid");
  for (std::size_t i = 0; i < grid_.size(); ++i) buf_[i] = w.values()[i];
}

WignerState WignerPropagator::state() const {
  std::vector<double> v(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) v[i] = buf_[i].real();
  return WignerState(grid_, std::move(v));
}

void WignerPropagator::make_real() {
  double m = max_imag_;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    m = std::max(m, std::abs(buf_[i].imag()));
    buf_[i] = buf_[i].real();
  }
  max_imag_ = m;
}

const ComplexBuffer& WignerPropagator::free_table(double dt) {
  if (free_table_.size() != grid_.size() || cached_dt_ != dt) {
    free_table_ = ComplexBuffer(grid_.size());
    for (std::size_t jk = 0; jk < grid_.nx(); ++jk) {
      const double k = grid_.k(jk);
      for (std::size_t iv = 0; iv < grid_.nv(); ++iv) {
        free_table_[grid_.index(jk, iv)] = std::polar(1.0, -k * grid_.v(iv) * dt);
      }
    }
    cached_dt_ = dt;
  }
  return free_table_;
}

void WignerPropagator::free(double dt) {
  const auto& table = free_table(dt);
  fft_.x_forward(buf_.span());
  kernels::cmul(buf_.span(), table.span());
  fft_.x_inverse(buf_.span());
  make_real();
}

const std::vector<double>& WignerPropagator::phase_rate(const SpectralField& phi) {
  require(phi.size() == grid_.nx(), "WignerPropagator: potential size does not match grid");
  const double e = params_.charge();
  const std::size_t nv = grid_.nv();
  for (std::size_t jk = 0; jk < grid_.nx(); ++jk) {
    const cplx c = cplx(0.0, e) * phi[jk];
    const double* s = shift_sine_.data() + jk * nv;
    cplx* row = scratch_.data() + jk * nv;
    for (std::size_t je = 0; je < nv; ++je) row[je] = c * s[je];
  }
  fft_.x_inverse(scratch_.span());
  for (std::size_t i = 0; i < grid_.size(); ++i) theta_[i] = scratch_[i].real();
  return theta_;
}

void WignerPropagator::kick(const SpectralField& phi, double dt) {
  const auto& theta = phase_rate(phi);
  fft_.v_to_eta(buf_.span());
  kernels::phase_kick(buf_.span(), theta, dt);
  fft_.eta_to_v(buf_.span());
  make_real();
}

ComplexBuffer WignerPropagator::eta_representation(const WignerState& w) const {
  require(w.grid() == grid_, "WignerPropagator: state grid does not match propagator grid");
  ComplexBuffer out(grid_.size());
  for (std::size_t i = 0; i < grid_.size(); ++i) out[i] = w.values()[i];
  fft_.v_to_eta(out.span());
  return out;
}

void WignerPropagator::linear_source(const SpectralField& phi, double dt, const ComplexBuffer& background_eta) {
  require(background_eta.size() == grid_.size(), "WignerPropagator: background representation mismatch");
  const auto& theta = phase_rate(phi);
  for (std::size_t i = 0; i < grid_.size(); ++i) scratch_[i] = cplx(0.0, theta[i]) * background_eta[i];
  fft_.eta_to_v(scratch_.span());
  for (std::size_t i = 0; i < grid_.size(); ++i) buf_[i] += dt * scratch_[i].real();
}

std::vector<double> WignerPropagator::density() const {
  std::vector<double> n(grid_.nx());
  kernels::active().row_real_sums(buf_.data(), grid_.nx(), grid_.nv(), n.data());
  for (auto& x : n) x *= grid_.dv();
  return n;
}

double WignerPropagator::kinetic_energy() const {
  return kernels::active().weighted_real_sum(buf_.data(), kinetic_weights_.data(), grid_.nx(), grid_.nv()) *
         grid_.dx() * grid_.dv();
}

namespace {

// Applies multiplier(eta_j) in the eta representation of w.
WignerState eta_multiply(const WignerState& w, const PhaseSpaceFft& fft, cplx (*mult)(double eta)) {
  const auto& g = w.grid();
  ComplexBuffer b(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) b[i] = w.values()[i];
  fft.v_to_eta(b.span());
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    for (std::size_t je = 0; je < g.nv(); ++je) b[g.index(ix, je)] *= mult(g.eta(je));
  }
  fft.eta_to_v(b.span());
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = b[i].real();
  return WignerState(g, std::move(out));
}

// Multiplies each row of w by f(x_i).
WignerState scale_rows(const WignerState& w, const std::vector<double>& f, double factor) {
  const auto& g = w.grid();
  WignerState out(g);
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    for (std::size_t iv = 0; iv < g.nv(); ++iv) out(ix, iv) = factor * f[ix] * w(ix, iv);
  }
  return out;
}

double l2(const WignerState& a) { return a.l2_norm(); }

}  // namespace

WignerState theta_apply(const SpectralField& phi, const WignerState& w, const PhysicalParams& params) {
  if (params.hbar() <= 0.0) {
    fail(ErrorKind::invalid_argument,
         "theta_apply: hbar == 0 has no quantum force operator; use classical_force");
  }
  WignerPropagator prop(w.grid(), params);
  const ComplexBuffer w_eta = prop.eta_representation(w);
  prop.load(WignerState(w.grid()));
  prop.linear_source(phi, 1.0, w_eta);
  return prop.state();
}

WignerState classical_force(const SpectralField& phi, const WignerState& w, const PhysicalParams& params) {
  PhaseSpaceFft fft(w.grid().nx(), w.grid().nv());
  const WignerState dv = eta_multiply(w, fft, [](double eta) { return cplx(0.0, -eta); });
  return scale_rows(dv, phi.derivative(1).to_real(), -params.charge() / params.mass());
}

WignerState semiclassical_correction(const SpectralField& phi, const WignerState& w,
                                     const PhysicalParams& params) {
  PhaseSpaceFft fft(w.grid().nx(), w.grid().nv());
  const WignerState d3 = eta_multiply(w, fft, [](double eta) { return cplx(0.0, eta * eta * eta); });
  const double m = params.mass();
  const double factor = params.charge() * params.hbar() * params.hbar() / (24.0 * m * m * m);
  return scale_rows(d3, phi.derivative(3).to_real(), factor);
}

SemiclassicalResidual semiclassical_residual(const SpectralField& phi, const WignerState& w,
                                             const PhysicalParams& params) {
  const WignerState q = theta_apply(phi, w, params);
  const WignerState qc = classical_force(phi, w, params);
  const WignerState corr = semiclassical_correction(phi, w, params);
  WignerState r1(w.grid()), r2(w.grid());
  for (std::size_t i = 0; i < w.grid().size(); ++i) {
    r1.values()[i] = q.values()[i] - qc.values()[i];
    r2.values()[i] = r1.values()[i] - corr.values()[i];
  }
  return {l2(r1), l2(r2)};
}

WignerState step_free(const WignerState& w, double dt) {
  // Free transport does not involve any physical constant.
  WignerPropagator prop(w.grid(), PhysicalParams::normalized(0.0, w.grid().box_length()));
  prop.load(w);
  prop.free(dt);
  return prop.state();
}

WignerState step_kick(const WignerState& w, const SpectralField& phi, double dt, const PhysicalParams& params,
                      EvolutionMode mode, const WignerState* background) {
  require(phi.size() == w.grid().nx(), "step_kick: potential and state grids differ");
  WignerPropagator prop(w.grid(), params);
  prop.load(w);
  if (mode == EvolutionMode::nonlinear) {
    prop.kick(phi, dt);
  } else {
    require(background != nullptr, "step_kick: linear mode needs a background state");
    require(background->grid() == w.grid(), "step_kick: background and state grids differ");
    prop.linear_source(phi, dt, prop.eta_representation(*background));
  }
  return prop.state();
}

}  // namespace qlandau
