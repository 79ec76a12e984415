#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qpick/stats.hpp"

using namespace qpick;

TEST_CASE("hypergeometric pmf sums to one and matches direct enumeration") {
  // N = 8, K = 3, n = 4: enumerate all 4-subsets of an 8-set directly
  std::vector<double> counts(5, 0.0);
  int total = 0;
  for (unsigned m = 0; m < 256; ++m) {
    if (__builtin_popcount(m) != 4) continue;
    ++total;
    counts[__builtin_popcount(m & 0b111u)] += 1.0;
  }
  double sum = 0.0;
  for (unsigned j = 0; j <= 4; ++j) {
    const double pmf = stats::hypergeom_pmf(8, 3, 4, j);
    CHECK(pmf == doctest::Approx(counts[j] / total).epsilon(1e-12));
    sum += pmf;
  }
  CHECK(sum == doctest::Approx(1.0));
  CHECK(stats::hypergeom_tail_below(8, 3, 4, 2) ==
        doctest::Approx((counts[0] + counts[1]) / total));
}

TEST_CASE("binomial tail") {
  CHECK(stats::binomial_tail_below(10, 0.5, 0) == doctest::Approx(0.0));
  CHECK(stats::binomial_tail_below(10, 0.5, 11) == doctest::Approx(1.0));
  // P[X < 2] for Bin(4, 1/2) = (1 + 4) / 16
  CHECK(stats::binomial_tail_below(4, 0.5, 2) == doctest::Approx(5.0 / 16.0));
}

TEST_CASE("mean absolute deviation of the hypergeometric fraction") {
  // balanced population: exact E|X/n - 1/2| is bounded by 1/(2 sqrt n)
  for (unsigned l : {4u, 6u, 8u}) {
    const std::uint64_t N = 1ull << l;
    for (std::uint64_t k : {2ull, 4ull, 8ull}) {
      const double sd = stats::hypergeom_mean_abs_dev_half(N, N / 2, k);
      CHECK(sd <= 1.0 / (2.0 * std::sqrt(double(k))) + 1e-12);
    }
  }
  // S = X: fraction is exactly 1/2
  CHECK(stats::hypergeom_mean_abs_dev_half(16, 8, 16) == doctest::Approx(0.0));
}

TEST_CASE("wilson interval") {
  auto w = stats::wilson(50, 100);
  CHECK(w.lo < 0.5);
  CHECK(w.hi > 0.5);
  CHECK(w.lo > 0.39);
  CHECK(w.hi < 0.61);
  auto z = stats::wilson(0, 1000);
  CHECK(z.lo == doctest::Approx(0.0));
  CHECK(z.hi < 0.005);
}

TEST_CASE("chi2 helpers") {
  std::vector<std::uint64_t> flat(8, 1000);
  auto r = stats::chi2_uniform(flat);
  CHECK(r.stat == doctest::Approx(0.0));
  CHECK(r.ok);
  std::vector<std::uint64_t> skew{4000, 0, 0, 0};
  CHECK(!stats::chi2_uniform(skew).ok);
}

TEST_CASE("splitmix is deterministic") {
  std::uint64_t s1 = 9, s2 = 9;
  for (int i = 0; i < 10; ++i) CHECK(stats::splitmix64(s1) == stats::splitmix64(s2));
}
