#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qpick/kernels.hpp"

using namespace qpick;
using kernels::cplx;

namespace {

std::vector<cplx> random_vec(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& c : v) c = cplx(d(gen), d(gen));
  return v;
}

}  // namespace

#ifdef QPICK_HAVE_AVX2_KERNELS

TEST_CASE("avx2 variants match the scalar reference") {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
    MESSAGE("no AVX2 on this host, skipping equivalence checks");
    return;
  }
  std::mt19937_64 gen(7);
  for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(2), std::size_t(3),
                        std::size_t(17), std::size_t(256), std::size_t(1023)}) {
    auto a = random_vec(gen, n);
    auto b = random_vec(gen, n);
    const cplx alpha(0.37, -1.21);

    const cplx d_s = kernels::scalar::cdot(a.data(), b.data(), n);
    const cplx d_v = kernels::avx2::cdot(a.data(), b.data(), n);
    CHECK(std::abs(d_s - d_v) <= 1e-10 * (1.0 + std::abs(d_s)));

    CHECK(kernels::scalar::sqnorm(a.data(), n) ==
          doctest::Approx(kernels::avx2::sqnorm(a.data(), n)).epsilon(1e-12));

    auto y_s = b, y_v = b;
    kernels::scalar::caxpy(alpha, a.data(), y_s.data(), n);
    kernels::avx2::caxpy(alpha, a.data(), y_v.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y_s[i] - y_v[i]) <= 1e-12);

    auto x_s = a, x_v = a;
    kernels::scalar::cscale(alpha, x_s.data(), n);
    kernels::avx2::cscale(alpha, x_v.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x_s[i] - x_v[i]) <= 1e-12);

    std::vector<std::uint8_t> mask(n);
    for (auto& m : mask) m = std::uint8_t(gen() & 1);
    auto m_s = a, m_v = a;
    kernels::scalar::negate_masked(m_s.data(), mask.data(), n);
    kernels::avx2::negate_masked(m_v.data(), mask.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(m_s[i] == m_v[i]);
  }
}

#endif  // QPICK_HAVE_AVX2_KERNELS

TEST_CASE("cdot conjugates its first argument") {
  std::mt19937_64 gen(1);
  auto a = random_vec(gen, 64);
  auto b = random_vec(gen, 64);
  const cplx ab = kernels::cdot(a.data(), b.data(), 64);
  const cplx ba = kernels::cdot(b.data(), a.data(), 64);
  CHECK(std::abs(ab - std::conj(ba)) <= 1e-12);
}

TEST_CASE("caxpy against direct evaluation") {
  std::mt19937_64 gen(2);
  auto x = random_vec(gen, 33);
  auto y = random_vec(gen, 33);
  auto expect = y;
  const cplx alpha(-0.5, 2.0);
  for (std::size_t i = 0; i < x.size(); ++i) expect[i] += alpha * x[i];
  kernels::caxpy(alpha, x.data(), y.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(expect[i] - y[i]) <= 1e-12);
}

TEST_CASE("active isa resolves") {
  const auto isa = kernels::active_isa();
  CHECK((isa == kernels::Isa::Scalar || isa == kernels::Isa::Avx2));
  MESSAGE("kernel path: ", kernels::isa_name(isa));
}
