#include <cmath>
#include <numbers>

#include "qlandau/analysis/analysis.hpp"
#include "qlandau/core/error.hpp"
#include "qlandau/core/fft.hpp"

namespace qlandau {

WignerState delta_profile(const WignerState& w0, long l, const PhysicalParams& params) {
  if (l == 0) fail(ErrorKind::invalid_argument, "delta_profile: mode l must be nonzero");
  require(params.hbar() > 0.0, "delta_profile: hbar must be > 0");
  const auto& g = w0.grid();
  const double kappa = 2.0 * std::numbers::pi * static_cast<double>(l) / g.box_length();
  const double q = params.hbar() * kappa / (2.0 * params.mass());
  ComplexBuffer b(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) b[i] = w0.values()[i];
  const PhaseSpaceFft fft(g.nx(), g.nv());
  fft.v_to_eta(b.span());
  // [w(v - q) - w(v + q)] / 2q  <->  i sin(eta q) / q in the eta representation.
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    for (std::size_t j = 0; j < g.nv(); ++j) b[g.index(ix, j)] *= cplx(0.0, std::sin(g.eta(j) * q) / q);
  }
  fft.eta_to_v(b.span());
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = b[i].real();
  return WignerState(g, std::move(out));
}

std::vector<StabilityRow> stability_report(const WignerState& w0, const PhysicalParams& params,
                                           const StabilityOptions& opts) {
  require(opts.lambda_bar >= 0.0 && opts.mu_bar >= 0.0 && opts.b >= 0.0,
          "stability_report: lambda_bar, mu_bar and b must be >= 0");
  require(opts.tau_points >= 1, "stability_report: tau_points must be >= 1");
  require(!opts.modes.empty() && !opts.times.empty(), "stability_report: modes and times must be non-empty");
  const double lam = opts.lambda_bar * (1.0 + opts.b);
  std::vector<StabilityRow> rows;
  for (long l : opts.modes) {
    const SpectralData dw = SpectralData::from_state(delta_profile(w0, l, params));
    NormSpec cspec;
    cspec.family = NormFamily::C;
    cspec.lambda = lam;
    cspec.p = 1;
    const double mean_norm = norm_hybrid(dw.x_mean(), cspec).value;
    for (double t : opts.times) {
      require(t > 0.0, "stability_report: times must be > 0");
      StabilityRow row;
      row.l = l;
      row.t = t;
      row.mean_norm = mean_norm;
      NormSpec zspec;
      zspec.family = NormFamily::Z;
      zspec.lambda = lam;
      zspec.mu = opts.mu_bar;
      zspec.p = 1;
      for (std::size_t i = 1; i <= opts.tau_points; ++i) {
        const double tau = t * static_cast<double>(i) / static_cast<double>(opts.tau_points);
        zspec.tau = tau - opts.b * t / (1.0 + opts.b);
        const double v = norm_hybrid(dw, zspec).value;
        if (v > row.shift_norm || i == 1) {
          row.shift_norm = v;
          row.tau_at_sup = tau;
        }
      }
      row.within = row.mean_norm <= opts.delta0 && row.shift_norm <= opts.delta0;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace qlandau
