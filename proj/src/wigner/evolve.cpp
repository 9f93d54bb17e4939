#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qlandau/core/error.hpp"
#include "qlandau/wigner/wigner.hpp"

namespace qlandau {

std::vector<double> DiagnosticsSeries::abs_phi(std::size_t mode) const {
  require(mode >= 1, "DiagnosticsSeries::abs_phi: modes are 1-based");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    require(mode <= r.abs_phi.size(), "DiagnosticsSeries::abs_phi: mode was not recorded");
    out.push_back(r.abs_phi[mode - 1]);
  }
  return out;
}

std::vector<double> DiagnosticsSeries::times() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.t);
  return out;
}

namespace {

double field_energy(const std::vector<double>& n, const SpectralField& phi, const InteractionKernel& kernel,
                    const PhysicalParams& params) {
  const double dx = phi.box_length() / static_cast<double>(phi.size());
  double s = 0.0;
  if (kernel.variant == InteractionKernel::Variant::coulomb) {
    for (double e : phi.derivative(1).to_real()) s += e * e;
    return 0.5 * params.eps0() * s * dx;
  }
  const auto phi_x = phi.to_real();
  for (std::size_t i = 0; i < n.size(); ++i) s += phi_x[i] * (n[i] - params.n0());
  return -0.5 * params.charge() * s * dx;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

// Ratio of the largest fluctuation amplitude in the outer quarter of the
// eta grid to the largest fluctuation amplitude anywhere.
double edge_fraction(const WignerState& w, const PhaseSpaceFft& fft) {
  const auto& g = w.grid();
  ComplexBuffer b(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) b[i] = w.values()[i];
  fft.x_forward(b.span());
  fft.v_to_eta(b.span());
  const long edge = static_cast<long>(3 * g.nv() / 8);
  double all = 0.0, outer = 0.0;
  for (std::size_t jk = 1; jk < g.nx(); ++jk) {
    for (std::size_t je = 0; je < g.nv(); ++je) {
      const double a = std::abs(b[g.index(jk, je)]);
      all = std::max(all, a);
      if (std::abs(signed_index(je, g.nv())) >= edge) outer = std::max(outer, a);
    }
  }
  return all > 0.0 ? outer / all : 0.0;
}

}  // namespace

double total_energy(const WignerState& w, const SpectralField& phi, const InteractionKernel& kernel,
                    const PhysicalParams& params) {
  const auto& g = w.grid();
  double kin = 0.0;
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    for (std::size_t iv = 0; iv < g.nv(); ++iv) {
      const double v = g.v(iv);
      kin += 0.5 * params.mass() * v * v * w(ix, iv);
    }
  }
  kin *= g.dx() * g.dv();
  return kin + field_energy(density(w), phi, kernel, params);
}

DiagnosticsSeries evolve(const WignerState& initial, const InteractionKernel& kernel, const PhysicalParams& params,
                         const EvolutionConfig& config) {
  const auto& g = initial.grid();
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) fail(ErrorKind::invalid_argument, "evolve: dt must be > 0");
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end)) {
    fail(ErrorKind::invalid_argument, "evolve: t_end must be >= 0");
  }
  if (config.cadence == 0) fail(ErrorKind::invalid_argument, "evolve: cadence must be >= 1");
  if (std::abs(params.box_length() - g.box_length()) > 1e-12 * g.box_length()) {
    fail(ErrorKind::invalid_argument, "evolve: box length of params and grid differ");
  }
  const bool linear = config.mode == EvolutionMode::linear;
  if (linear) {
    if (!config.background) fail(ErrorKind::invalid_argument, "evolve: linear mode needs a background state");
    if (!(config.background->grid() == g)) fail(ErrorKind::invalid_argument, "evolve: background grid differs");
    if (!config.background->homogeneous(1e-10)) {
      fail(ErrorKind::invalid_argument, "evolve: linear mode needs an x-independent background");
    }
  }

  DiagnosticsSeries out;
  const double cfl = config.dt * g.k_max() * g.v_max();
  const double cfl_bound = std::numbers::pi * static_cast<double>(g.nv()) / 2.0;
  if (cfl > cfl_bound) {
    std::ostringstream msg;
    msg << "dt*k_max*v_max = " << cfl << " exceeds " << cfl_bound
        << "; free-streaming phase per step is under-resolved in v";
    out.warnings.push_back(msg.str());
  }

  const auto n_steps = static_cast<std::size_t>(std::ceil(config.t_end / config.dt - 1e-9));
  const std::size_t modes = std::min(config.diag_modes, g.nx() / 2 - 1);

  WignerPropagator prop(g, params);
  PhaseSpaceFft diag_fft(g.nx(), g.nv());
  prop.load(initial);
  ComplexBuffer background_eta;
  if (linear) background_eta = prop.eta_representation(*config.background);

  const double mass0 = initial.mass();
  const double mass_scale = std::max(std::abs(mass0), 1e-300);
  bool warned_filament = false;

  auto record = [&](double t) {
    const auto n = prop.density();
    const SpectralField phi = poisson_solve(n, kernel, params);
    const WignerState w = prop.state();
    DiagnosticsRow row;
    row.t = t;
    row.mass = sum(n) * g.dx();
    row.energy = prop.kinetic_energy() + field_energy(n, phi, kernel, params);
    row.l2 = w.l2_norm();
    for (std::size_t j = 1; j <= modes; ++j) row.abs_phi.push_back(phi.amplitude(static_cast<long>(j)));
    if (!std::isfinite(row.mass) || !std::isfinite(row.energy) || !std::isfinite(row.l2)) {
      std::ostringstream msg;
      msg << "evolve: non-finite state detected at t = " << t;
      fail(ErrorKind::numerical_abort, msg.str());
    }
    if (!warned_filament && edge_fraction(w, diag_fft) > 1e-3) {
      std::ostringstream msg;
      msg << "filamentation reached the eta-grid boundary at t = " << t;
      out.warnings.push_back(msg.str());
      warned_filament = true;
    }
    out.rows.push_back(std::move(row));
  };

  record(0.0);
  const double h = 0.5 * config.dt;
  for (std::size_t step = 1; step <= n_steps; ++step) {
    prop.free(h);
    const SpectralField phi = poisson_solve(prop.density(), kernel, params);
    if (linear) {
      prop.linear_source(phi, config.dt, background_eta);
    } else {
      prop.kick(phi, config.dt);
    }
    prop.free(h);

    const auto n = prop.density();
    const double mass = sum(n) * g.dx();
    if (!std::isfinite(mass)) {
      std::ostringstream msg;
      msg << "evolve: NaN detected at step " << step;
      fail(ErrorKind::numerical_abort, msg.str());
    }
    const double drift = std::abs(mass - mass0) / mass_scale;
    if (drift > config.max_mass_drift) {
      std::ostringstream msg;
      msg << "evolve: relative mass drift " << drift << " exceeds " << config.max_mass_drift << " at step "
          << step;
      fail(ErrorKind::numerical_abort, msg.str());
    }
    if (step % config.cadence == 0 || step == n_steps) record(static_cast<double>(step) * config.dt);
  }
  out.final_state = prop.state();
  out.max_imag_residue = prop.max_imag_residue();
  return out;
}

}  // namespace qlandau
