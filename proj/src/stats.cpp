#include "qpick/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace qpick::stats {

double log_choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) - std::lgamma(double(n - k) + 1.0);
}

double hypergeom_pmf(std::uint64_t N, std::uint64_t K, std::uint64_t n, std::uint64_t j) {
  if (n > N || K > N) throw std::invalid_argument("hypergeom_pmf: bad parameters");
  if (j > n || j > K || (n - j) > (N - K)) return 0.0;
  return std::exp(log_choose(K, j) + log_choose(N - K, n - j) - log_choose(N, n));
}

double hypergeom_tail_below(std::uint64_t N, std::uint64_t K, std::uint64_t n, std::uint64_t lo) {
  double s = 0.0;
  for (std::uint64_t j = 0; j < lo && j <= n; ++j) s += hypergeom_pmf(N, K, n, j);
  return s < 1.0 ? s : 1.0;
}

double binomial_pmf(std::uint64_t n, double p, std::uint64_t j) {
  if (j > n) return 0.0;
  if (p <= 0.0) return j == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return j == n ? 1.0 : 0.0;
  return std::exp(log_choose(n, j) + double(j) * std::log(p) + double(n - j) * std::log1p(-p));
}

double binomial_tail_below(std::uint64_t n, double p, std::uint64_t lo) {
  double s = 0.0;
  for (std::uint64_t j = 0; j < lo && j <= n; ++j) s += binomial_pmf(n, p, j);
  return s < 1.0 ? s : 1.0;
}

double hypergeom_mean_abs_dev_half(std::uint64_t N, std::uint64_t K, std::uint64_t n) {
  double s = 0.0;
  for (std::uint64_t j = 0; j <= n; ++j) {
    const double pmf = hypergeom_pmf(N, K, n, j);
    if (pmf > 0.0) s += pmf * std::fabs(double(j) / double(n) - 0.5);
  }
  return s;
}

WilsonInterval wilson(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 95%
  const double nd = double(trials);
  const double p = double(successes) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = p + z2 / (2.0 * nd);
  const double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd));
  WilsonInterval w;
  w.lo = std::max(0.0, (center - half) / denom);
  w.hi = std::min(1.0, (center + half) / denom);
  return w;
}

Chi2Result chi2_expected(const std::vector<std::uint64_t>& counts, const std::vector<double>& expected) {
  if (counts.size() != expected.size() || counts.empty())
    throw std::invalid_argument("chi2: size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("chi2: nonpositive expected count");
    const double d = double(counts[i]) - expected[i];
    stat += d * d / expected[i];
  }
  const double dof = double(counts.size() - 1);
  Chi2Result r;
  r.stat = stat;
  r.threshold = dof + 3.0 * std::sqrt(2.0 * dof);
  r.ok = stat <= r.threshold;
  return r;
}

Chi2Result chi2_uniform(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  std::vector<double> expected(counts.size(), double(total) / double(counts.size()));
  return chi2_expected(counts, expected);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace qpick::stats
