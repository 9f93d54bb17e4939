#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace qlandau::kernels {

using cplx = std::complex<double>;

/// Data-parallel inner loops of the propagators. Every backend implements the
/// same table; the scalar backend is the reference the others are tested
/// against.
struct KernelTable {
  const char* name;
  /// a[i] *= b[i]
  void (*cmul)(cplx* a, const cplx* b, std::size_t n);
  /// a[i] *= exp(i * scale * theta[i])
  void (*phase_kick)(cplx* a, const double* theta, double scale, std::size_t n);
  /// out[r] = sum_c Re a[r * cols + c]
  void (*row_real_sums)(const cplx* a, std::size_t rows, std::size_t cols, double* out);
  /// sum_r sum_c Re a[r * cols + c] * weights[c]
  double (*weighted_real_sum)(const cplx* a, const double* weights, std::size_t rows, std::size_t cols);
  /// s[i] = sin(x[i]), c[i] = cos(x[i])
  void (*sincos)(const double* x, double* s, double* c, std::size_t n);
};

enum class Backend { scalar, avx2 };

const KernelTable& scalar_table() noexcept;
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table() noexcept;

/// True if the AVX2 backend is compiled and the CPU reports AVX2 and FMA.
bool avx2_available() noexcept;

/// Active table. Defaults to AVX2 when available unless the environment
/// variable QW_SIMD=scalar is set.
const KernelTable& active() noexcept;

/// Overrides the active backend; returns false if it is unavailable.
bool select(Backend backend) noexcept;
Backend selected() noexcept;

inline void cmul(std::span<cplx> a, std::span<const cplx> b) { active().cmul(a.data(), b.data(), a.size()); }
inline void phase_kick(std::span<cplx> a, std::span<const double> theta, double scale) {
  active().phase_kick(a.data(), theta.data(), scale, a.size());
}

}  // namespace qlandau::kernels
