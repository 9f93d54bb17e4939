#pragma once

#include <cstddef>
#include <vector>

namespace qlandau {

/// Signed frequency index of FFT bin `j` of an `n`-point transform:
/// 0, 1, ..., n/2-1, -n/2, ..., -1.
constexpr long signed_index(std::size_t j, std::size_t n) noexcept {
  return j < n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}

constexpr bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

/// Uniform periodic phase-space grid: x in [0, L), v in [-v_max, v_max).
///
/// Storage everywhere in the library is row-major with v fastest:
/// index(ix, iv) = ix * nv + iv.
///
/// Dual axes:
///   k_j   = 2 pi j / L                      (x wavenumber, signed j)
///   eta_j = 2 pi j / (nv dv) = pi j / v_max (angular dual of v, signed j)
/// The Nyquist bins (j = -n/2) are carried in storage but are never advanced
/// by any phase so that real fields stay exactly real.
class PhaseSpaceGrid {
 public:
  PhaseSpaceGrid(std::size_t nx, std::size_t nv, double box_length, double v_max);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t nv() const noexcept { return nv_; }
  std::size_t size() const noexcept { return nx_ * nv_; }
  double box_length() const noexcept { return L_; }
  double v_max() const noexcept { return v_max_; }
  double dx() const noexcept { return L_ / static_cast<double>(nx_); }
  double dv() const noexcept { return 2.0 * v_max_ / static_cast<double>(nv_); }
  double deta() const noexcept;

  double x(std::size_t i) const noexcept { return static_cast<double>(i) * dx(); }
  double v(std::size_t m) const noexcept { return -v_max_ + static_cast<double>(m) * dv(); }
  /// Wavenumber of FFT bin j; zero at the Nyquist bin.
  double k(std::size_t j) const noexcept;
  /// Angular v-dual of FFT bin j; zero at the Nyquist bin.
  double eta(std::size_t j) const noexcept;
  /// Largest resolved |k|, (nx/2 - 1) 2 pi / L.
  double k_max() const noexcept;

  std::size_t index(std::size_t ix, std::size_t iv) const noexcept { return ix * nv_ + iv; }

  std::vector<double> x_axis() const;
  std::vector<double> v_axis() const;
  std::vector<double> k_axis() const;
  std::vector<double> eta_axis() const;

  bool operator==(const PhaseSpaceGrid&) const = default;

 private:
  std::size_t nx_;
  std::size_t nv_;
  double L_;
  double v_max_;
};

/// Validating factory: sizes must be powers of two (>= 2) and extents positive.
PhaseSpaceGrid make_grid(std::size_t nx, std::size_t nv, double box_length, double v_max);

}  // namespace qlandau
