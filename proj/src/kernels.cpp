#include "qpick/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qpick::kernels {

namespace scalar {

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double sqnorm(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double cr = alpha.real(), ci = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(xr * cr - xi * ci, xr * ci + xi * cr);
  }
}

void cscale(cplx alpha, cplx* x, std::size_t n) {
  const double cr = alpha.real(), ci = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    x[i] = cplx(xr * cr - xi * ci, xr * ci + xi * cr);
  }
}

void negate_masked(cplx* x, const std::uint8_t* mask, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (mask[i]) x[i] = -x[i];
}

}  // namespace scalar

namespace {

Isa resolve_isa() {
  if (const char* env = std::getenv("QPICK_SIMD")) {
    if (!std::strcmp(env, "scalar")) return Isa::Scalar;
#ifdef QPICK_HAVE_AVX2_KERNELS
    if (!std::strcmp(env, "avx2")) return Isa::Avx2;
#endif
  }
#ifdef QPICK_HAVE_AVX2_KERNELS
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = resolve_isa();
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

#ifdef QPICK_HAVE_AVX2_KERNELS
#define QPICK_DISPATCH(fn, ...) \
  return active_isa() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define QPICK_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

cplx cdot(const cplx* a, const cplx* b, std::size_t n) { QPICK_DISPATCH(cdot, a, b, n); }
double sqnorm(const cplx* a, std::size_t n) { QPICK_DISPATCH(sqnorm, a, n); }
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) { QPICK_DISPATCH(caxpy, alpha, x, y, n); }
void cscale(cplx alpha, cplx* x, std::size_t n) { QPICK_DISPATCH(cscale, alpha, x, n); }
void negate_masked(cplx* x, const std::uint8_t* mask, std::size_t n) { QPICK_DISPATCH(negate_masked, x, mask, n); }

#undef QPICK_DISPATCH

}  // namespace qpick::kernels
