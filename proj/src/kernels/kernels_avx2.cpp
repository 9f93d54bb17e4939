// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.
#include <immintrin.h>

#include <cmath>

#include "qlandau/kernels/kernels.hpp"

namespace qlandau::kernels {

namespace {

// Cephes sin/cos, 4 lanes. Three-part Cody-Waite reduction by pi/4; accurate
// to a few ulp for |x| < 1e8, which covers every phase the propagators form.
constexpr double kFourOverPi = 1.27323954473516268615;
constexpr double kDP1 = 7.85398125648498535156E-1;
constexpr double kDP2 = 3.77489470793079817668E-8;
constexpr double kDP3 = 2.69515142907905952645E-15;

inline __m256d poly_sin(__m256d zz) {
  __m256d p = _mm256_set1_pd(1.58962301576546568060E-10);
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(-2.50507477628578072866E-8));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(2.75573136213857245213E-6));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(-1.98412698295895385996E-4));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(8.33333333332211858878E-3));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(-1.66666666666666307295E-1));
  return p;
}

inline __m256d poly_cos(__m256d zz) {
  __m256d p = _mm256_set1_pd(-1.13585365213876817300E-11);
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(2.08757008419747316778E-9));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(-2.75573141792967388112E-7));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(2.48015872888517045348E-5));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(-1.38888888888730564116E-3));
  p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(4.16666666666665929218E-2));
  return p;
}

inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  const __m256d ax = _mm256_andnot_pd(sign_bit, x);
  const __m256d x_neg = _mm256_and_pd(x, sign_bit);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, _mm256_set1_pd(kFourOverPi)));
  // Round odd octants up so the reduced argument lies in [-pi/4, pi/4].
  const __m256d half_y = _mm256_mul_pd(y, _mm256_set1_pd(0.5));
  const __m256d odd = _mm256_cmp_pd(_mm256_floor_pd(half_y), half_y, _CMP_NEQ_OQ);
  y = _mm256_add_pd(y, _mm256_and_pd(odd, _mm256_set1_pd(1.0)));
  // Octant j = y mod 8, one of {0, 2, 4, 6}.
  const __m256d j = _mm256_sub_pd(
      y, _mm256_mul_pd(_mm256_set1_pd(8.0), _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.125)))));

  __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP1), ax);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP2), z);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP3), z);
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d ps = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), poly_sin(zz), z);
  __m256d pc = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0));
  pc = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), poly_cos(zz), pc);

  const __m256d two = _mm256_set1_pd(2.0), four = _mm256_set1_pd(4.0), six = _mm256_set1_pd(6.0);
  const __m256d swap = _mm256_or_pd(_mm256_cmp_pd(j, two, _CMP_EQ_OQ), _mm256_cmp_pd(j, six, _CMP_EQ_OQ));
  const __m256d sin_neg = _mm256_cmp_pd(j, four, _CMP_GE_OQ);
  const __m256d cos_neg = _mm256_or_pd(_mm256_cmp_pd(j, two, _CMP_EQ_OQ), _mm256_cmp_pd(j, four, _CMP_EQ_OQ));

  __m256d s = _mm256_blendv_pd(ps, pc, swap);
  __m256d c = _mm256_blendv_pd(pc, ps, swap);
  s = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, sign_bit));
  s = _mm256_xor_pd(s, x_neg);
  c = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign_bit));
  s_out = s;
  c_out = c;
}

// Two interleaved complex numbers per register.
inline __m256d cmul2(__m256d a, __m256d b) {
  const __m256d br = _mm256_movedup_pd(b);
  const __m256d bi = _mm256_permute_pd(b, 0xF);
  const __m256d a_swap = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(a_swap, bi));
}

void cmul_avx2(cplx* a, const cplx* b, std::size_t n) {
  auto* pa = reinterpret_cast<double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(pa + 2 * i, cmul2(va, vb));
  }
  for (; i < n; ++i) a[i] *= b[i];
}

void phase_kick_avx2(cplx* a, const double* theta, double scale, std::size_t n) {
  auto* pa = reinterpret_cast<double*>(a);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s, c;
    sincos4(_mm256_mul_pd(vscale, _mm256_loadu_pd(theta + i)), s, c);
    const __m256d lo = _mm256_unpacklo_pd(c, s);  // c0 s0 c2 s2
    const __m256d hi = _mm256_unpackhi_pd(c, s);  // c1 s1 c3 s3
    const __m256d p01 = _mm256_permute2f128_pd(lo, hi, 0x20);
    const __m256d p23 = _mm256_permute2f128_pd(lo, hi, 0x31);
    _mm256_storeu_pd(pa + 2 * i, cmul2(_mm256_loadu_pd(pa + 2 * i), p01));
    _mm256_storeu_pd(pa + 2 * i + 4, cmul2(_mm256_loadu_pd(pa + 2 * i + 4), p23));
  }
  for (; i < n; ++i) {
    const double t = scale * theta[i];
    a[i] *= cplx(std::cos(t), std::sin(t));
  }
}

inline double sum_real_lanes(__m256d acc) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  return lanes[0] + lanes[2];
}

void row_real_sums_avx2(const cplx* a, std::size_t rows, std::size_t cols, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    const auto* row = reinterpret_cast<const double*>(a + r * cols);
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(row + 2 * c));
      acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(row + 2 * c + 4));
    }
    double s = sum_real_lanes(_mm256_add_pd(acc0, acc1));
    for (; c < cols; ++c) s += row[2 * c];
    out[r] = s;
  }
}

double weighted_real_sum_avx2(const cplx* a, const double* weights, std::size_t rows, std::size_t cols) {
  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto* row = reinterpret_cast<const double*>(a + r * cols);
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      const __m256d w = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(weights + c)), 0x50);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + 2 * c), w, acc);
    }
    for (; c < cols; ++c) tail += row[2 * c] * weights[c];
  }
  return sum_real_lanes(acc) + tail;
}

void sincos_avx2(const double* x, double* s, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs, vc;
    sincos4(_mm256_loadu_pd(x + i), vs, vc);
    _mm256_storeu_pd(s + i, vs);
    _mm256_storeu_pd(c + i, vc);
  }
  for (; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

constexpr KernelTable kAvx2{"avx2", cmul_avx2, phase_kick_avx2, row_real_sums_avx2, weighted_real_sum_avx2,
                            sincos_avx2};

}  // namespace

const KernelTable* avx2_table_impl() noexcept { return &kAvx2; }

}  // namespace qlandau::kernels
