#include "qlandau/core/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qlandau/core/error.hpp"

namespace qlandau {

PhaseSpaceGrid::PhaseSpaceGrid(std::size_t nx, std::size_t nv, double box_length, double v_max)
    : nx_(nx), nv_(nv), L_(box_length), v_max_(v_max) {}

double PhaseSpaceGrid::deta() const noexcept {
  return 2.0 * std::numbers::pi / (static_cast<double>(nv_) * dv());
}

double PhaseSpaceGrid::k(std::size_t j) const noexcept {
  if (j == nx_ / 2) return 0.0;
  return 2.0 * std::numbers::pi * static_cast<double>(signed_index(j, nx_)) / L_;
}

double PhaseSpaceGrid::eta(std::size_t j) const noexcept {
  if (j == nv_ / 2) return 0.0;
  return static_cast<double>(signed_index(j, nv_)) * deta();
}

double PhaseSpaceGrid::k_max() const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(nx_ / 2 - 1) / L_;
}

std::vector<double> PhaseSpaceGrid::x_axis() const {
  std::vector<double> out(nx_);
  for (std::size_t i = 0; i < nx_; ++i) out[i] = x(i);
  return out;
}

std::vector<double> PhaseSpaceGrid::v_axis() const {
  std::vector<double> out(nv_);
  for (std::size_t m = 0; m < nv_; ++m) out[m] = v(m);
  return out;
}

std::vector<double> PhaseSpaceGrid::k_axis() const {
  std::vector<double> out(nx_);
  for (std::size_t j = 0; j < nx_; ++j) out[j] = k(j);
  return out;
}

std::vector<double> PhaseSpaceGrid::eta_axis() const {
  std::vector<double> out(nv_);
  for (std::size_t j = 0; j < nv_; ++j) out[j] = eta(j);
  return out;
}

PhaseSpaceGrid make_grid(std::size_t nx, std::size_t nv, double box_length, double v_max) {
  require(nx >= 2 && is_power_of_two(nx), "make_grid: nx = " + std::to_string(nx) + " is not a power of two");
  require(nv >= 2 && is_power_of_two(nv), "make_grid: nv = " + std::to_string(nv) + " is not a power of two");
  require(std::isfinite(box_length) && box_length > 0.0, "make_grid: box length must be > 0");
  require(std::isfinite(v_max) && v_max > 0.0, "make_grid: v_max must be > 0");
  return PhaseSpaceGrid(nx, nv, box_length, v_max);
}

}  // namespace qlandau
