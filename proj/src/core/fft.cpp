#include "qlandau/core/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "qlandau/core/error.hpp"

namespace qlandau {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

FftPlan plan_many(int n, int howmany, int stride, int dist, int sign) {
  std::lock_guard lock(planner_mutex());
  const std::size_t total = static_cast<std::size_t>(n) * static_cast<std::size_t>(howmany);
  ComplexBuffer scratch(std::max<std::size_t>(total, 1));
  const int dims[1] = {n};
  fftw_plan p = fftw_plan_many_dft(1, dims, howmany, as_fftw(scratch.data()), nullptr, stride, dist,
                                   as_fftw(scratch.data()), nullptr, stride, dist, sign, FFTW_ESTIMATE);
  if (p == nullptr) fail(ErrorKind::invalid_argument, "FFTW failed to create a plan");
  return FftPlan(p);
}

void scale(std::span<cplx> data, double s) {
  for (auto& c : data) c *= s;
}

}  // namespace

ComplexBuffer::ComplexBuffer(std::size_t n)
    : data_(static_cast<cplx*>(fftw_malloc(sizeof(cplx) * std::max<std::size_t>(n, 1)))), n_(n) {
  if (!data_) throw std::bad_alloc();
  fill(cplx{});
}

ComplexBuffer::ComplexBuffer(const ComplexBuffer& other) : ComplexBuffer(other.n_) {
  std::copy(other.data(), other.data() + n_, data());
}

ComplexBuffer& ComplexBuffer::operator=(const ComplexBuffer& other) {
  if (this != &other) {
    ComplexBuffer tmp(other);
    *this = std::move(tmp);
  }
  return *this;
}

void ComplexBuffer::fill(cplx value) noexcept { std::fill(data(), data() + n_, value); }

void ComplexBuffer::Free::operator()(cplx* p) const noexcept { fftw_free(p); }

FftPlan& FftPlan::operator=(FftPlan&& o) noexcept {
  if (this != &o) {
    if (plan_ != nullptr) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    }
    plan_ = o.plan_;
    o.plan_ = nullptr;
  }
  return *this;
}

FftPlan::~FftPlan() {
  if (plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

void FftPlan::execute(cplx* data) const {
  fftw_execute_dft(static_cast<fftw_plan>(plan_), as_fftw(data), as_fftw(data));
}

Fft1d::Fft1d(std::size_t n)
    : n_(n),
      fwd_(plan_many(static_cast<int>(n), 1, 1, static_cast<int>(n), FFTW_FORWARD)),
      bwd_(plan_many(static_cast<int>(n), 1, 1, static_cast<int>(n), FFTW_BACKWARD)) {}

// The span may come from a std::vector, which is not guaranteed to satisfy
// FFTW's SIMD alignment, so 1-D transforms go through an aligned copy.
void Fft1d::forward(std::span<cplx> data) const {
  require(data.size() == n_, "Fft1d: size mismatch");
  ComplexBuffer tmp(n_);
  std::copy(data.begin(), data.end(), tmp.data());
  fwd_.execute(tmp.data());
  std::copy(tmp.data(), tmp.data() + n_, data.begin());
}

void Fft1d::backward(std::span<cplx> data) const {
  require(data.size() == n_, "Fft1d: size mismatch");
  ComplexBuffer tmp(n_);
  std::copy(data.begin(), data.end(), tmp.data());
  bwd_.execute(tmp.data());
  std::copy(tmp.data(), tmp.data() + n_, data.begin());
}

void Fft1d::inverse(std::span<cplx> data) const {
  backward(data);
  scale(data, 1.0 / static_cast<double>(n_));
}

PhaseSpaceFft::PhaseSpaceFft(std::size_t nx, std::size_t nv)
    : nx_(nx),
      nv_(nv),
      x_fwd_(plan_many(static_cast<int>(nx), static_cast<int>(nv), static_cast<int>(nv), 1, FFTW_FORWARD)),
      x_bwd_(plan_many(static_cast<int>(nx), static_cast<int>(nv), static_cast<int>(nv), 1, FFTW_BACKWARD)),
      v_bwd_(plan_many(static_cast<int>(nv), static_cast<int>(nx), 1, static_cast<int>(nv), FFTW_BACKWARD)),
      v_fwd_(plan_many(static_cast<int>(nv), static_cast<int>(nx), 1, static_cast<int>(nv), FFTW_FORWARD)) {}

void PhaseSpaceFft::x_forward(std::span<cplx> data) const {
  require(data.size() == nx_ * nv_, "PhaseSpaceFft: size mismatch");
  x_fwd_.execute(data.data());
}

void PhaseSpaceFft::x_inverse(std::span<cplx> data) const {
  require(data.size() == nx_ * nv_, "PhaseSpaceFft: size mismatch");
  x_bwd_.execute(data.data());
  scale(data, 1.0 / static_cast<double>(nx_));
}

void PhaseSpaceFft::v_to_eta(std::span<cplx> data) const {
  require(data.size() == nx_ * nv_, "PhaseSpaceFft: size mismatch");
  v_bwd_.execute(data.data());
}

void PhaseSpaceFft::eta_to_v(std::span<cplx> data) const {
  require(data.size() == nx_ * nv_, "PhaseSpaceFft: size mismatch");
  v_fwd_.execute(data.data());
  scale(data, 1.0 / static_cast<double>(nv_));
}

}  // namespace qlandau
