#include <cmath>
#include <numbers>

#include "qlandau/core/error.hpp"
#include "qlandau/wigner/wigner.hpp"

namespace qlandau {

InteractionKernel InteractionKernel::soft(double gamma) {
  require(std::isfinite(gamma) && gamma >= 1.0, "InteractionKernel::soft: gamma must be >= 1");
  return {Variant::soft, gamma};
}

double InteractionKernel::soft_weight(long j) const {
  if (j == 0) return 0.0;
  return 1.0 / (1.0 + std::pow(std::abs(static_cast<double>(j)), gamma));
}

std::string InteractionKernel::name() const {
  switch (variant) {
    case Variant::coulomb: return "coulomb";
    case Variant::soft: return "soft";
    case Variant::none: return "none";
  }
  return "unknown";
}

std::vector<double> density(const WignerState& w) {
  const auto& g = w.grid();
  std::vector<double> n(g.nx(), 0.0);
  for (std::size_t ix = 0; ix < g.nx(); ++ix) {
    double s = 0.0;
    for (std::size_t iv = 0; iv < g.nv(); ++iv) s += w(ix, iv);
    n[ix] = s * g.dv();
  }
  return n;
}

SpectralField poisson_solve(const std::vector<double>& n, const InteractionKernel& kernel,
                            const PhysicalParams& params) {
  const std::size_t nx = n.size();
  require(nx >= 2, "poisson_solve: density needs at least two points");
  const double L = params.box_length();
  SpectralField nhat = SpectralField::from_real(n, L);
  SpectralField phi(nx, L);
  if (kernel.variant == InteractionKernel::Variant::none) return phi;
  for (std::size_t j = 1; j < nx; ++j) {
    if (j == nx / 2) continue;
    const long js = signed_index(j, nx);
    if (kernel.variant == InteractionKernel::Variant::coulomb) {
      const double k = 2.0 * std::numbers::pi * static_cast<double>(js) / L;
      phi[j] = -(params.charge() / params.eps0()) * nhat[j] / (k * k);
    } else {
      phi[j] = kernel.soft_weight(js) * nhat[j];
    }
  }
  return phi;
}

}  // namespace qlandau
