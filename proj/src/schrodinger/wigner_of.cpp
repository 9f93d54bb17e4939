#include <cmath>
#include <numbers>
#include <sstream>

#include "qlandau/core/error.hpp"
#include "qlandau/core/fft.hpp"
#include "qlandau/schrodinger/schrodinger.hpp"

namespace qlandau {

WignerState wigner_of(const WaveEnsemble& ens, const PhaseSpaceGrid& grid, const PhysicalParams& params) {
  ens.validate();
  require(params.hbar() > 0.0, "wigner_of: hbar must be > 0");
  require(std::abs(ens.box_length - grid.box_length()) <= 1e-12 * grid.box_length(),
          "wigner_of: ensemble and grid box lengths differ");
  require(ens.nx % grid.nx() == 0, "wigner_of: ensemble grid must be a multiple of the phase-space grid");
  const std::size_t nxs = ens.nx, nx = grid.nx(), nv = grid.nv(), stride = nxs / nx;
  const double L = grid.box_length(), dv = grid.dv();
  const double hbar = params.hbar(), m = params.mass();

  const Fft1d fft(nxs);
  std::vector<ComplexBuffer> spectra;
  spectra.reserve(ens.size());
  double peak = 0.0;
  for (std::size_t s = 0; s < ens.size(); ++s) {
    ComplexBuffer b(nxs);
    std::copy(ens.psis[s].begin(), ens.psis[s].end(), b.data());
    fft.forward(b.span());
    for (std::size_t j = 0; j < nxs; ++j) peak = std::max(peak, std::sqrt(ens.probs[s]) * std::abs(b[j]));
    spectra.push_back(std::move(b));
  }
  // Occupation-weighted momentum extent of the whole mixture.
  double kmax = 0.0;
  for (std::size_t s = 0; s < ens.size(); ++s) {
    const double w = std::sqrt(ens.probs[s]);
    for (std::size_t j = 0; j < nxs; ++j) {
      if (w * std::abs(spectra[s][j]) > 1e-7 * peak) {
        kmax = std::max(kmax, std::abs(2.0 * std::numbers::pi * static_cast<double>(signed_index(j, nxs)) / L));
      }
    }
  }
  if (hbar * kmax / m >= grid.v_max()) {
    std::ostringstream msg;
    msg << "wigner_of: velocity window v_max = " << grid.v_max() << " does not cover hbar k_max / m = "
        << hbar * kmax / m;
    fail(ErrorKind::resolution, msg.str());
  }

  std::vector<double> kvec(nxs);
  for (std::size_t j = 0; j < nxs; ++j) {
    kvec[j] = 2.0 * std::numbers::pi * static_cast<double>(signed_index(j, nxs)) / L;
  }

  ComplexBuffer X(grid.size());
  X.fill(0.0);
  ComplexBuffer plus(nxs), minus(nxs);
  for (std::size_t je = 0; je < nv; ++je) {
    // True dual coordinate, including the Nyquist bin.
    const long js = signed_index(je, nv);
    const double eta = 2.0 * std::numbers::pi * static_cast<double>(js) / (static_cast<double>(nv) * dv);
    const double a = hbar * eta / (2.0 * m);
    const double sign = (je % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t s = 0; s < ens.size(); ++s) {
      const auto& c = spectra[s];
      for (std::size_t j = 0; j < nxs; ++j) {
        const cplx ph = std::polar(1.0, kvec[j] * a);
        plus[j] = c[j] * ph;
        minus[j] = c[j] * std::conj(ph);
      }
      fft.inverse(plus.span());
      fft.inverse(minus.span());
      const double weight = ens.scale * ens.probs[s] * sign / dv;
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const std::size_t i = ix * stride;
        X[grid.index(ix, je)] += weight * plus[i] * std::conj(minus[i]);
      }
    }
  }
  const PhaseSpaceFft pfft(nx, nv);
  pfft.eta_to_v(X.span());
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) w[i] = X[i].real();
  return WignerState(grid, std::move(w));
}

}  // namespace qlandau
