#pragma once

#include <cmath>
#include <numbers>

namespace qlandau {

/// Physical constants of an electron plasma on a periodic box.
///
/// Units are whatever the caller uses consistently; the solver equations are
///   i hbar dpsi/dt = -(hbar^2/2m) psi'' - e phi psi,
///   phi''          = (e/eps0) (n - n0),
/// i.e. the electron potential energy is U = -e phi. `hbar == 0` selects the
/// classical Vlasov limit wherever a classical branch exists.
class PhysicalParams {
 public:
  struct Fields {
    double hbar = 0.0;
    double mass = 1.0;
    double charge = 1.0;
    double eps0 = 1.0;
    double n0 = 1.0;
    double vT = 1.0;
    double mu_over_T = -20.0;
    double box_length = 2.0 * std::numbers::pi;
  };

  /// Validates every strictly positive field; throws qlandau::Error otherwise.
  explicit PhysicalParams(const Fields& f);

  /// omega_pe = vT = m = e = eps0 = n0 = 1 and hbar = H, so H is the
  /// dimensionless quantum parameter hbar omega_pe / (m vT^2).
  static PhysicalParams normalized(double H, double box_length,
                                   double mu_over_T = -20.0);

  double hbar() const noexcept { return f_.hbar; }
  double mass() const noexcept { return f_.mass; }
  double charge() const noexcept { return f_.charge; }
  double eps0() const noexcept { return f_.eps0; }
  double n0() const noexcept { return f_.n0; }
  double vT() const noexcept { return f_.vT; }
  double mu_over_T() const noexcept { return f_.mu_over_T; }
  double box_length() const noexcept { return f_.box_length; }
  const Fields& fields() const noexcept { return f_; }

  double omega_pe() const noexcept {
    return std::sqrt(f_.n0 * f_.charge * f_.charge / (f_.mass * f_.eps0));
  }
  double debye_length() const noexcept { return f_.vT / omega_pe(); }
  /// H = hbar omega_pe / (m vT^2).
  double quantum_parameter() const noexcept {
    return f_.hbar * omega_pe() / (f_.mass * f_.vT * f_.vT);
  }
  bool classical() const noexcept { return f_.hbar == 0.0; }

  PhysicalParams with_hbar(double hbar) const;
  PhysicalParams with_box_length(double L) const;

 private:
  Fields f_;
};

}  // namespace qlandau
