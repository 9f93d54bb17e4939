#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace qlandau {

using cplx = std::complex<double>;

/// SIMD-aligned complex storage (fftw_malloc). Move-only.
class ComplexBuffer {
 public:
  ComplexBuffer() = default;
  explicit ComplexBuffer(std::size_t n);
  ComplexBuffer(const ComplexBuffer& other);
  ComplexBuffer& operator=(const ComplexBuffer& other);
  ComplexBuffer(ComplexBuffer&&) noexcept = default;
  ComplexBuffer& operator=(ComplexBuffer&&) noexcept = default;

  std::size_t size() const noexcept { return n_; }
  cplx* data() noexcept { return data_.get(); }
  const cplx* data() const noexcept { return data_.get(); }
  cplx& operator[](std::size_t i) noexcept { return data_[i]; }
  const cplx& operator[](std::size_t i) const noexcept { return data_[i]; }
  std::span<cplx> span() noexcept { return {data(), n_}; }
  std::span<const cplx> span() const noexcept { return {data(), n_}; }
  void fill(cplx value) noexcept;

 private:
  struct Free {
    void operator()(cplx* p) const noexcept;
  };
  std::unique_ptr<cplx[], Free> data_;
  std::size_t n_ = 0;
};

/// Owning handle for an FFTW plan.
class FftPlan {
 public:
  FftPlan() = default;
  explicit FftPlan(void* plan) : plan_(plan) {}
  FftPlan(FftPlan&& o) noexcept : plan_(o.plan_) { o.plan_ = nullptr; }
  FftPlan& operator=(FftPlan&& o) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan();

  /// In-place execution on an fftw_malloc-aligned buffer.
  void execute(cplx* data) const;

 private:
  void* plan_ = nullptr;
};

/// Unnormalized in-place 1-D transforms of length n.
/// forward: X_j = sum_m x_m e^{-2 pi i jm/n}; backward: e^{+2 pi i jm/n}.
class Fft1d {
 public:
  explicit Fft1d(std::size_t n);
  std::size_t size() const noexcept { return n_; }
  void forward(std::span<cplx> data) const;
  void backward(std::span<cplx> data) const;
  /// backward followed by 1/n, so inverse(forward(x)) == x.
  void inverse(std::span<cplx> data) const;

 private:
  std::size_t n_;
  FftPlan fwd_;
  FftPlan bwd_;
};

/// Batched transforms over an nx-by-nv row-major array (v fastest).
///
/// Convention: forward transforms carry no prefactor, inverse transforms
/// carry 1/N.
///   x_forward : w(x,v)   -> w^(k,v) = sum_x w e^{-i k x}
///   x_inverse : w^(k,v)  -> w(x,v)
///   v_to_eta  : w(x,v)   -> X(x,j)  = sum_m w(x,v_m) e^{+2 pi i jm/nv}
///   eta_to_v  : X(x,j)   -> w(x,v)
/// The physical characteristic function u(x,eta_j) = int w e^{i v eta} dv
/// equals dv (-1)^j X(x,j); phase multiplications commute with that factor,
/// so the propagators work directly on X.
class PhaseSpaceFft {
 public:
  PhaseSpaceFft(std::size_t nx, std::size_t nv);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t nv() const noexcept { return nv_; }

  void x_forward(std::span<cplx> data) const;
  void x_inverse(std::span<cplx> data) const;
  void v_to_eta(std::span<cplx> data) const;
  void eta_to_v(std::span<cplx> data) const;

 private:
  std::size_t nx_;
  std::size_t nv_;
  FftPlan x_fwd_;
  FftPlan x_bwd_;
  FftPlan v_bwd_;
  FftPlan v_fwd_;
};

}  // namespace qlandau
