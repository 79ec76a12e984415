// AVX2/FMA variants of the complex kernels. Compiled with -mavx2 -mfma;
// only reached after the runtime CPUID check in kernels.cpp.

#include "qpick/kernels.hpp"

#ifdef QPICK_HAVE_AVX2_KERNELS

#include <immintrin.h>

namespace qpick::kernels::avx2 {

namespace {
// [a1 a0] per 128-bit lane -> [a0 a1] (swaps re/im of each complex).
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}
}  // namespace

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);            // ar*br, ai*bi
    acc_im = _mm256_fmadd_pd(swap_pairs(va), vb, acc_im);  // ai*br, ar*bi
  }
  // acc_im holds [ai*br, ar*bi, ...]; imag part is (ar*bi - ai*br).
  const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  double re = hsum(acc_re);
  double im = hsum(_mm256_mul_pd(acc_im, sign));
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double sqnorm(const cplx* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const __m256d vre = _mm256_set1_pd(alpha.real());
  const __m256d vim = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    // (xr+i*xi)(cr+i*ci): addsub combines [xr*cr - xi*ci, xi*cr + xr*ci].
    __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(vx, vre), _mm256_mul_pd(swap_pairs(vx), vim));
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
  }
  const double cr = alpha.real(), ci = alpha.imag();
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(xr * cr - xi * ci, xr * ci + xi * cr);
  }
}

void cscale(cplx alpha, cplx* x, std::size_t n) {
  double* px = reinterpret_cast<double*>(x);
  const __m256d vre = _mm256_set1_pd(alpha.real());
  const __m256d vim = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(vx, vre), _mm256_mul_pd(swap_pairs(vx), vim));
    _mm256_storeu_pd(px + 2 * i, prod);
  }
  const double cr = alpha.real(), ci = alpha.imag();
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = cplx(xr * cr - xi * ci, xr * ci + xi * cr);
  }
}

void negate_masked(cplx* x, const std::uint8_t* mask, std::size_t n) {
  double* px = reinterpret_cast<double*>(x);
  const __m256d neg = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    if (!(mask[i] | mask[i + 1])) continue;
    const double m0 = mask[i] ? 1.0 : 0.0, m1 = mask[i + 1] ? 1.0 : 0.0;
    __m256d sel = _mm256_set_pd(m1, m1, m0, m0);
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d flip = _mm256_and_pd(_mm256_cmp_pd(sel, _mm256_setzero_pd(), _CMP_GT_OQ), neg);
    _mm256_storeu_pd(px + 2 * i, _mm256_xor_pd(vx, flip));
  }
  for (; i < n; ++i)
    if (mask[i]) x[i] = -x[i];
}

}  // namespace qpick::kernels::avx2

#endif  // QPICK_HAVE_AVX2_KERNELS
