#pragma once
// Exact tail sums and small statistical helpers shared by the harnesses.

#include <cstdint>
#include <vector>

namespace qpick::stats {

double log_choose(std::uint64_t n, std::uint64_t k);

// P[X = j] and P[X < lo] for X ~ Hypergeometric(population N, marked K,
// draws n): number of marked elements in a uniform n-subset. The tail is
// a full pmf summation, not a bound.
double hypergeom_pmf(std::uint64_t N, std::uint64_t K, std::uint64_t n, std::uint64_t j);
double hypergeom_tail_below(std::uint64_t N, std::uint64_t K, std::uint64_t n, std::uint64_t lo);

double binomial_pmf(std::uint64_t n, double p, std::uint64_t j);
double binomial_tail_below(std::uint64_t n, double p, std::uint64_t lo);

// Exact E|X/n - 1/2| for X ~ Hypergeometric(N, K, n); the quantity bounded
// by 1/(2 sqrt n) in the masked-bit hiding argument.
double hypergeom_mean_abs_dev_half(std::uint64_t N, std::uint64_t K, std::uint64_t n);

struct WilsonInterval {
  double lo = 0.0, hi = 1.0;
};
// 95% score interval.
WilsonInterval wilson(std::uint64_t successes, std::uint64_t trials);

// Pearson chi-square statistic against expected counts, plus the 3-sigma
// acceptance threshold dof + 3*sqrt(2 dof) used by goodness-of-fit checks.
struct Chi2Result {
  double stat = 0.0;
  double threshold = 0.0;
  bool ok = false;
};
Chi2Result chi2_uniform(const std::vector<std::uint64_t>& counts);
Chi2Result chi2_expected(const std::vector<std::uint64_t>& counts, const std::vector<double>& expected);

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace qpick::stats
