#include <cmath>

#include "qlandau/kernels/kernels.hpp"

namespace qlandau::kernels {

namespace {

void cmul_scalar(cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    a[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void phase_kick_scalar(cplx* a, const double* theta, double scale, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = scale * theta[i];
    const double c = std::cos(t), s = std::sin(t);
    const double ar = a[i].real(), ai = a[i].imag();
    a[i] = cplx(ar * c - ai * s, ai * c + ar * s);
  }
}

void row_real_sums_scalar(const cplx* a, std::size_t rows, std::size_t cols, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    const cplx* row = a + r * cols;
    for (std::size_t c = 0; c < cols; ++c) s += row[c].real();
    out[r] = s;
  }
}

double weighted_real_sum_scalar(const cplx* a, const double* weights, std::size_t rows, std::size_t cols) {
  double s = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const cplx* row = a + r * cols;
    for (std::size_t c = 0; c < cols; ++c) s += row[c].real() * weights[c];
  }
  return s;
}

void sincos_scalar(const double* x, double* s, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

constexpr KernelTable kScalar{"scalar", cmul_scalar, phase_kick_scalar, row_real_sums_scalar,
                              weighted_real_sum_scalar, sincos_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace qlandau::kernels
