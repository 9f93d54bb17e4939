#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlandau/core/error.hpp"
#include "qlandau/schrodinger/schrodinger.hpp"

namespace qlandau {

namespace {

struct Preset {
  InteractionKernel kernel;
  double H;
  double k;
  double epsilon;
  double t_end;
  double dt;
  double sample_every;
  std::size_t nx;
  std::size_t nv;
  double relative_tolerance;
};

Preset preset(const std::string& name) {
  if (name == "free") return {InteractionKernel::none(), 0.5, 0.5, 0.1, 20.0, 0.1, 1.0, 16, 256, 1e-8};
  if (name == "perturbed") return {InteractionKernel::coulomb(), 0.5, 0.5, 0.1, 20.0, 0.1, 1.0, 16, 256, 1e-3};
  fail(ErrorKind::invalid_argument, "cross_validate: unknown scenario '" + name + "'");
}

double maxwellian(double v) { return std::exp(-0.5 * v * v) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

double CrossValidationReport::max_sup() const {
  double m = 0.0;
  for (double d : sup_distance) m = std::max(m, d);
  return m;
}

std::vector<std::string> cross_validation_scenarios() { return {"free", "perturbed"}; }

CrossValidationReport cross_validate(const std::string& scenario, int level) {
  require(level >= 0 && level <= 2, "cross_validate: level must be in [0, 2]");
  const Preset p = preset(scenario);
  const std::size_t refine = std::size_t{1} << level;
  const double L = 2.0 * std::numbers::pi / p.k;
  const PhysicalParams params = PhysicalParams::normalized(p.H, L);
  const PhaseSpaceGrid grid = aligned_grid(p.nx * refine, p.nv * refine, params);
  const double dt = p.dt / static_cast<double>(refine);

  ThermalOptions opts;
  opts.epsilon = p.epsilon;
  opts.mode = 1;
  WaveEnsemble ens = thermal_ensemble(grid, params, maxwellian, opts);
  const WignerState w0 = wigner_of(ens, grid, params);

  CrossValidationReport rep;
  rep.scenario = scenario;
  rep.level = level;
  rep.nx = grid.nx();
  rep.nv = grid.nv();
  rep.nx_sp = ens.nx;
  rep.states = ens.size();
  rep.dt = dt;
  rep.w0_sup = w0.max_abs();
  rep.tolerance = p.relative_tolerance * rep.w0_sup;

  WignerPropagator prop(grid, params);
  prop.load(w0);
  auto sample = [&](double t) {
    const WignerState a = prop.state();
    const WignerState b = wigner_of(ens, grid, params);
    double sup = 0.0, l2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = a.values()[i] - b.values()[i];
      sup = std::max(sup, std::abs(d));
      l2 += d * d;
    }
    rep.times.push_back(t);
    rep.sup_distance.push_back(sup);
    rep.l2_distance.push_back(std::sqrt(l2 * grid.dx() * grid.dv()));
  };

  const auto steps = static_cast<std::size_t>(std::llround(p.t_end / dt));
  const auto every = static_cast<std::size_t>(std::llround(p.sample_every / dt));
  sample(0.0);
  for (std::size_t s = 1; s <= steps; ++s) {
    prop.free(0.5 * dt);
    prop.kick(poisson_solve(prop.density(), p.kernel, params), dt);
    prop.free(0.5 * dt);
    sp_step(ens, p.kernel, params, dt);
    if (s % every == 0 || s == steps) sample(static_cast<double>(s) * dt);
  }
  return rep;
}

}  // namespace qlandau
