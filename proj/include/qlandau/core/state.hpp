#pragma once

#include <cstddef>
#include <vector>

#include "qlandau/core/fft.hpp"
#include "qlandau/core/grid.hpp"
#include "qlandau/core/params.hpp"

namespace qlandau {

/// Real phase-space quasi-distribution w(x,v) on a grid. Values may be
/// negative.
class WignerState {
 public:
  explicit WignerState(PhaseSpaceGrid grid);
  WignerState(PhaseSpaceGrid grid, std::vector<double> values);

  const PhaseSpaceGrid& grid() const noexcept { return grid_; }
  std::vector<double>& values() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double& operator()(std::size_t ix, std::size_t iv) noexcept { return values_[grid_.index(ix, iv)]; }
  double operator()(std::size_t ix, std::size_t iv) const noexcept { return values_[grid_.index(ix, iv)]; }

  /// sum w dx dv.
  double mass() const noexcept;
  /// sqrt(sum w^2 dx dv).
  double l2_norm() const noexcept;
  double max_abs() const noexcept;
  /// True if every row agrees with row 0 to `tol` (absolute, scaled by max|w|).
  bool homogeneous(double tol = 1e-10) const noexcept;

 private:
  PhaseSpaceGrid grid_;
  std::vector<double> values_;
};

/// Fourier coefficients of a real periodic field on nx points, stored in FFT
/// order with the library convention (no forward prefactor). Hermitian:
/// coeffs[-j] == conj(coeffs[j]).
class SpectralField {
 public:
  explicit SpectralField(std::size_t nx, double box_length);
  SpectralField(std::vector<cplx> coeffs, double box_length);

  static SpectralField from_real(const std::vector<double>& values, double box_length);

  std::size_t size() const noexcept { return coeffs_.size(); }
  double box_length() const noexcept { return L_; }
  cplx& operator[](std::size_t j) noexcept { return coeffs_[j]; }
  cplx operator[](std::size_t j) const noexcept { return coeffs_[j]; }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }

  /// Coefficient of signed mode j (j may be negative).
  cplx mode(long j) const noexcept;
  /// Fourier-series amplitude |c_j| = |coeff_j| / nx.
  double amplitude(long j) const noexcept;

  /// Values on the nx-point grid.
  std::vector<double> to_real() const;
  /// Values of the trigonometric interpolant at x + shift for every grid x.
  std::vector<double> shifted(double shift) const;
  /// Spectral derivative of order `order`.
  SpectralField derivative(int order = 1) const;

  /// max_j |coeff(-j) - conj(coeff(j))|.
  double hermitian_defect() const noexcept;

 private:
  std::vector<cplx> coeffs_;
  double L_;
};

/// Homogeneous Maxwellian n0 (2 pi vT^2)^{-1/2} exp(-v^2 / 2 vT^2).
WignerState maxwellian_profile(const PhaseSpaceGrid& grid, const PhysicalParams& params);

/// w(x,v) = (1 + eps cos(k_mode x)) * w0(v) for a homogeneous w0; k_mode is
/// the `mode`-th box harmonic.
WignerState perturbed(const WignerState& background, double eps, int mode = 1);

}  // namespace qlandau
