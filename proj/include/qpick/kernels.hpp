#pragma once
// Complex-vector kernels used by the statevector simulator.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The active variant is picked once at runtime from
// CPUID; setting QPICK_SIMD=scalar (or =avx2) before the first call
// forces a specific path. Both variants are exported so the test suite
// can check them against each other on the same inputs.

#include <complex>
#include <cstddef>
#include <cstdint>

namespace qpick::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

Isa active_isa();
const char* isa_name(Isa isa);

namespace scalar {
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
double sqnorm(const cplx* a, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void cscale(cplx alpha, cplx* x, std::size_t n);
void negate_masked(cplx* x, const std::uint8_t* mask, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define QPICK_HAVE_AVX2_KERNELS 1
namespace avx2 {
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
double sqnorm(const cplx* a, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void cscale(cplx alpha, cplx* x, std::size_t n);
void negate_masked(cplx* x, const std::uint8_t* mask, std::size_t n);
}  // namespace avx2
#endif

// Dispatched entry points. <a|b> conjugates the first argument.
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
double sqnorm(const cplx* a, std::size_t n);
void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
void cscale(cplx alpha, cplx* x, std::size_t n);
void negate_masked(cplx* x, const std::uint8_t* mask, std::size_t n);

}  // namespace qpick::kernels
