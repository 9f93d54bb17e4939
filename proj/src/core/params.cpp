#include "qlandau/core/params.hpp"

#include <string>

#include "qlandau/core/error.hpp"

namespace qlandau {

namespace {

void require_positive(double value, const char* name) {
  require(std::isfinite(value) && value > 0.0,
          std::string("PhysicalParams: ") + name + " must be finite and > 0 (got " +
              std::to_string(value) + ")");
}

}  // namespace

PhysicalParams::PhysicalParams(const Fields& f) : f_(f) {
  require(std::isfinite(f.hbar) && f.hbar >= 0.0, "PhysicalParams: hbar must be finite and >= 0");
  require_positive(f.mass, "mass");
  require(std::isfinite(f.charge) && f.charge != 0.0, "PhysicalParams: charge must be finite and nonzero");
  require_positive(f.eps0, "eps0");
  require_positive(f.n0, "n0");
  require_positive(f.vT, "vT");
  require(std::isfinite(f.mu_over_T), "PhysicalParams: mu_over_T must be finite");
  require_positive(f.box_length, "box_length");
  const double wpe = omega_pe();
  require(std::isfinite(wpe) && wpe > 0.0, "PhysicalParams: plasma frequency is not finite");
}

PhysicalParams PhysicalParams::normalized(double H, double box_length, double mu_over_T) {
  Fields f;
  f.hbar = H;
  f.mu_over_T = mu_over_T;
  f.box_length = box_length;
  return PhysicalParams(f);
}

PhysicalParams PhysicalParams::with_hbar(double hbar) const {
  Fields f = f_;
  f.hbar = hbar;
  return PhysicalParams(f);
}

PhysicalParams PhysicalParams::with_box_length(double L) const {
  Fields f = f_;
  f.box_length = L;
  return PhysicalParams(f);
}

}  // namespace qlandau
