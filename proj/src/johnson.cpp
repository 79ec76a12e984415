#include "qpick/johnson.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace qpick::johnson {

long long choose_ll(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Frac::Frac(long long n, long long d) { *this = make(n, d); }

Frac Frac::make(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("Frac: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const __int128 g = n == 0 ? d : gcd128(n, d);
  Frac f;
  f.num = n / g;
  f.den = d / g;
  return f;
}

Frac Frac::operator+(const Frac& o) const { return make(num * o.den + o.num * den, den * o.den); }
Frac Frac::operator-(const Frac& o) const { return make(num * o.den - o.num * den, den * o.den); }
Frac Frac::operator*(const Frac& o) const { return make(num * o.num, den * o.den); }
Frac Frac::operator/(const Frac& o) const {
  if (o.num == 0) throw std::domain_error("Frac: division by zero");
  return make(num * o.den, den * o.num);
}

double Frac::to_double() const { return double(num) / double(den); }

Eigen::MatrixXd JohnsonScheme::projector(unsigned h) const {
  if (h < proj.size()) return proj[h];
  return Eigen::MatrixXd::Zero(Eigen::Index(D), Eigen::Index(D));
}

Eigen::MatrixXd JohnsonScheme::A(unsigned i) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(Eigen::Index(D), Eigen::Index(D));
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b)
      if (dist[a * D + b] == i) m(Eigen::Index(a), Eigen::Index(b)) = 1.0;
  return m;
}

Eigen::MatrixXd JohnsonScheme::C(unsigned j) const {
  // C_j = sum_i binom(k-i, j) A_i: entries depend only on the distance
  const Eigen::Index di = Eigen::Index(D);
  Eigen::MatrixXd m(di, di);
  std::array<double, 16> row{};
  for (unsigned d = 0; d <= classes; ++d) row[d] = double(choose_ll(k - d, j));
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b) m(Eigen::Index(a), Eigen::Index(b)) = row[dist[a * D + b]];
  return m;
}

long long a1_eigenvalue(unsigned N, unsigned k, unsigned h) {
  return (long long)(k - h) * (long long)(N - k - h) - (long long)h;
}

long long cj_eigenvalue(unsigned N, unsigned k, unsigned j, unsigned h) {
  const long long top = (long long)N - j - h;
  const long long bot = (long long)N - k - h;
  const long long left = (long long)k - h;
  const long long right = (long long)j - h;
  if (top < 0 || bot < 0 || left < 0 || right < 0) return 0;
  return choose_ll(unsigned(top), unsigned(bot)) * choose_ll(unsigned(left), unsigned(right));
}

long long dim_two_row(unsigned N, unsigned h) {
  if (h == 0) return 1;
  return choose_ll(N, h) - choose_ll(N, h - 1);
}

long long dim_hook_211(unsigned N) { return (long long)(N - 1) * (N - 2) / 2; }

JohnsonScheme build_scheme(unsigned N, unsigned k) {
  if (N < 2 || N > 12) throw std::invalid_argument("johnson: combinatorial budget is 2 <= N <= 12");
  if (k < 1 || k >= N) throw std::invalid_argument("johnson: need 1 <= k <= N-1");
  JohnsonScheme s;
  s.N = N;
  s.k = k;
  s.classes = std::min(k, N - k);
  s.D = std::size_t(choose_ll(N, k));
  s.index_of.assign(1u << N, -1);
  for (std::uint32_t m = 0; m < (1u << N); ++m)
    if (std::popcount(m) == int(k)) {
      s.index_of[m] = std::int32_t(s.basis.size());
      s.basis.push_back(m);
    }
  s.dist.resize(s.D * s.D);
  for (std::size_t a = 0; a < s.D; ++a)
    for (std::size_t b = 0; b < s.D; ++b)
      s.dist[a * s.D + b] = std::uint8_t(std::popcount(s.basis[a] ^ s.basis[b]) / 2);

  // spectral projectors from A_1; its eigenvalues are the integers
  // (k-h)(N-k-h) - h with gaps N - 2h >= 2, so grouping is robust
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.A(1));
  if (es.info() != Eigen::Success) throw std::runtime_error("johnson: eigendecomposition failed");
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  s.proj.assign(s.classes + 1, Eigen::MatrixXd::Zero(Eigen::Index(s.D), Eigen::Index(s.D)));
  std::vector<long long> counts(s.classes + 1, 0);
  for (Eigen::Index c = 0; c < vals.size(); ++c) {
    int best = -1;
    double best_gap = 1e9;
    for (unsigned h = 0; h <= s.classes; ++h) {
      const double gap = std::fabs(vals(c) - double(a1_eigenvalue(N, k, h)));
      if (gap < best_gap) {
        best_gap = gap;
        best = int(h);
      }
    }
    if (best < 0 || best_gap > 1e-6) throw std::runtime_error("johnson: unexpected eigenvalue");
    s.proj[best] += vecs.col(c) * vecs.col(c).transpose();
    ++counts[best];
  }
  for (unsigned h = 0; h <= s.classes; ++h)
    if (counts[h] != dim_two_row(N, h))
      throw std::runtime_error("johnson: eigenspace dimension mismatch");
  return s;
}

Eigen::MatrixXd projector_via_PviaC(const JohnsonScheme& s, unsigned h) {
  if (h > 2) throw std::invalid_argument("PviaC: printed only for h <= 2");
  if (h > s.classes) return Eigen::MatrixXd::Zero(Eigen::Index(s.D), Eigen::Index(s.D));
  const unsigned N = s.N, k = s.k;
  // class function: f(d) = (N-2h+1) sum_j (-1)^{j-h} binom(k-j, h-j)
  //                        / ((k-j+1) binom(N-j-h+1, N-k-h)) * binom(k-d, j)
  std::array<double, 16> f{};
  for (unsigned d = 0; d <= s.classes; ++d) {
    Frac acc(0);
    for (unsigned j = 0; j <= h; ++j) {
      const long long denom = (long long)(k - j + 1) * choose_ll(N - j - h + 1, N - k - h);
      Frac term = Frac(choose_ll(k - j, h - j), denom) * Frac(choose_ll(k - d, j));
      if ((h - j) % 2 == 1) term = Frac(0) - term;
      acc = acc + term;
    }
    f[d] = (acc * Frac(N - 2 * h + 1)).to_double();
  }
  const Eigen::Index di = Eigen::Index(s.D);
  Eigen::MatrixXd m(di, di);
  for (std::size_t a = 0; a < s.D; ++a)
    for (std::size_t b = 0; b < s.D; ++b)
      m(Eigen::Index(a), Eigen::Index(b)) = f[s.dist[a * s.D + b]];
  return m;
}

Eigen::MatrixXd projector_via_PAssoc1(const JohnsonScheme& s) {
  if (s.classes < 2) return Eigen::MatrixXd::Zero(Eigen::Index(s.D), Eigen::Index(s.D));
  const unsigned N = s.N, k = s.k;
  const Frac scale(1, choose_ll(N - 4, k - 2));
  std::array<double, 16> f{};
  for (unsigned d = 0; d <= s.classes; ++d) {
    const Frac kd(k - d);
    Frac c = Frac(choose_ll(k - d, 2)) -
             Frac((long long)(k - 1) * (k - 1), N - 2) * kd +
             Frac((long long)k * k * (k - 1) * (k - 1), 2ll * (N - 1) * (N - 2));
    f[d] = (c * scale).to_double();
  }
  const Eigen::Index di = Eigen::Index(s.D);
  Eigen::MatrixXd m(di, di);
  for (std::size_t a = 0; a < s.D; ++a)
    for (std::size_t b = 0; b < s.D; ++b)
      m(Eigen::Index(a), Eigen::Index(b)) = f[s.dist[a * s.D + b]];
  return m;
}

Eigen::MatrixXd projector_via_PAssoc2(const JohnsonScheme& s) {
  const unsigned N = s.N, k = s.k;
  const Frac scale(1, choose_ll(N - 2, k - 1));
  std::array<double, 16> f{};
  for (unsigned d = 0; d <= s.classes; ++d)
    f[d] = ((Frac(k - d) - Frac((long long)k * k, N)) * scale).to_double();
  const Eigen::Index di = Eigen::Index(s.D);
  Eigen::MatrixXd m(di, di);
  for (std::size_t a = 0; a < s.D; ++a)
    for (std::size_t b = 0; b < s.D; ++b)
      m(Eigen::Index(a), Eigen::Index(b)) = f[s.dist[a * s.D + b]];
  return m;
}

std::vector<OverlapEntry> overlap_traces(const JohnsonScheme& s) {
  const unsigned N = s.N, k = s.k;
  // ordered pair counts per distance
  std::vector<long long> pairs(s.classes + 1, 0);
  for (std::size_t a = 0; a < s.D; ++a)
    for (std::size_t b = 0; b < s.D; ++b) ++pairs[s.dist[a * s.D + b]];
  std::vector<OverlapEntry> out;
  for (unsigned i = 0; i <= s.classes; ++i)
    for (unsigned i2 = 0; i2 <= s.classes; ++i2) {
      OverlapEntry e;
      e.i = i;
      e.i2 = i2;
      // Tr((Id x A_i) A_{i2}^{(1,s)}) = sum over pairs at distance i2 that
      // also have distance i of <Psi(z)|Psi(z')> = (k - i2)/k
      e.matrix_route = i == i2 ? Frac(pairs[i] * (long long)(k - i), k) : Frac(0);
      e.closed_form = i == i2 ? Frac(choose_ll(N, k)) * Frac(choose_ll(k, i)) *
                                    Frac(choose_ll(N - k, i)) * Frac(k - i, k)
                              : Frac(0);
      out.push_back(e);
    }
  return out;
}

TraceIdentity main_trace_identity(const JohnsonScheme& s) {
  const unsigned N = s.N, k = s.k;
  if (N < 5 || k < 2 || k > N - 1)
    throw std::invalid_argument("main trace identity: need N >= 5 and 2 <= k <= N-1");
  TraceIdentity t;
  // explicit-matrix route: contract Id_Q (x) Pi_I^{(N-2,2)} against
  // Pi^{(1,s)}_{(N-1,1)} through the isometry W |z> = |Psi(z), z>, which
  // turns the Q-tensor factor into the elementwise overlap (k-d)/k
  const Eigen::MatrixXd p2 = s.projector(2);
  const Eigen::MatrixXd p1 = s.projector(1);
  double acc = 0.0;
  for (std::size_t a = 0; a < s.D; ++a)
    for (std::size_t b = 0; b < s.D; ++b)
      acc += (double(k - s.dist[a * s.D + b]) / double(k)) * p2(Eigen::Index(a), Eigen::Index(b)) *
             p1(Eigen::Index(b), Eigen::Index(a));
  t.computed = acc;
  t.closed_form =
      double(k - 1) / double(k) * double(N) * double(N - k - 1) / double(N - 2);

  // exact rational route over distance classes
  std::vector<long long> pairs(s.classes + 1, 0);
  for (std::size_t a = 0; a < s.D; ++a)
    for (std::size_t b = 0; b < s.D; ++b) ++pairs[s.dist[a * s.D + b]];
  Frac exact(0);
  if (k >= 2 && N >= k + 2) {
    const Frac s1(1, choose_ll(N - 4, k - 2));
    const Frac s2(1, choose_ll(N - 2, k - 1));
    for (unsigned d = 0; d <= s.classes; ++d) {
      const Frac c1 = Frac(choose_ll(k - d, 2)) -
                      Frac((long long)(k - 1) * (k - 1), N - 2) * Frac(k - d) +
                      Frac((long long)k * k * (k - 1) * (k - 1), 2ll * (N - 1) * (N - 2));
      const Frac c2 = Frac(k - d) - Frac((long long)k * k, N);
      exact = exact + Frac(pairs[d]) * Frac(k - d, k) * c1 * s1 * c2 * s2;
    }
  }
  t.exact_computed = exact;
  t.exact_closed = Frac(k - 1, k) * Frac((long long)N * (N - k - 1), N - 2);
  t.normalized = t.computed / double(N - 1);
  return t;
}

// ---- characters ----

namespace {

// beta-set representation for border-strip removal
long long mn_rec(std::vector<long long> beta, const std::vector<unsigned>& mu, std::size_t mi) {
  if (mi == mu.size()) return 1;
  const long long t = mu[mi];
  long long total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const long long b = beta[i];
    if (b < t) continue;
    const long long target = b - t;
    bool occupied = false;
    int between = 0;
    for (std::size_t j2 = 0; j2 < beta.size(); ++j2) {
      if (beta[j2] == target) occupied = true;
      if (beta[j2] > target && beta[j2] < b) ++between;
    }
    if (occupied) continue;
    auto next = beta;
    next[i] = target;
    const long long sub = mn_rec(std::move(next), mu, mi + 1);
    total += (between % 2 == 0 ? 1 : -1) * sub;
  }
  return total;
}

}  // namespace

long long mn_character(const std::vector<unsigned>& lambda, const std::vector<unsigned>& mu) {
  unsigned nl = 0, nm = 0;
  for (auto x : lambda) nl += x;
  for (auto x : mu) nm += x;
  if (nl != nm) throw std::invalid_argument("mn_character: partition sizes differ");
  std::vector<long long> beta;
  const std::size_t L = lambda.size();
  for (std::size_t i = 0; i < L; ++i) beta.push_back((long long)lambda[i] + (long long)(L - 1 - i));
  return mn_rec(std::move(beta), mu, 0);
}

std::vector<std::vector<unsigned>> partitions_of(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  // non-increasing parts
  std::function<void(unsigned, unsigned)> rec = [&](unsigned rest, unsigned maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

long long class_size(unsigned n, const std::vector<unsigned>& mu) {
  long long fact = 1;
  for (unsigned i = 2; i <= n; ++i) fact *= i;
  // z_mu = prod_i i^{m_i} m_i!
  long long z = 1;
  std::vector<unsigned> mult(n + 1, 0);
  for (auto p : mu) ++mult[p];
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned c = 0; c < mult[i]; ++c) z *= i;
    for (unsigned c = 2; c <= mult[i]; ++c) z *= c;
  }
  return fact / z;
}

namespace {

// number of z in D fixed by a permutation with the given cycle type:
// subsets of cycles with total length k
long long fixed_weight_k(const std::vector<unsigned>& mu, unsigned k) {
  std::vector<long long> ways(k + 1, 0);
  ways[0] = 1;
  for (auto len : mu)
    for (unsigned j = k; j + 1 > len; --j)
      if (ways[j - len]) ways[j] += ways[j - len];
  return ways[k];
}

unsigned fixed_points(const std::vector<unsigned>& mu) {
  unsigned f = 0;
  for (auto p : mu) f += p == 1;
  return f;
}

// representative permutation (as x -> pi(x)) for a cycle type
std::vector<unsigned> representative(const std::vector<unsigned>& mu) {
  std::vector<unsigned> pi;
  unsigned base = 0;
  for (auto len : mu) {
    for (unsigned i = 0; i < len; ++i) pi.push_back(base + (i + 1) % len);
    base += len;
  }
  return pi;
}

std::uint32_t apply_inverse_to_mask(const std::vector<unsigned>& pi, std::uint32_t z) {
  // bit x of pi^{-1}(z) is bit pi(x) of z
  std::uint32_t out = 0;
  for (unsigned x = 0; x < pi.size(); ++x)
    if ((z >> pi[x]) & 1u) out |= (1u << x);
  return out;
}

}  // namespace

Multiplicities irrep_multiplicities(const JohnsonScheme& s) {
  const unsigned N = s.N;
  std::vector<unsigned> l11{N - 1, 1};
  std::vector<unsigned> l22{N - 2, 2};
  std::vector<unsigned> l211{N - 2, 1, 1};
  __int128 acc11 = 0, acc22 = 0, acc211 = 0;
  long long fact = 1;
  for (unsigned i = 2; i <= N; ++i) fact *= i;
  for (const auto& mu : partitions_of(N)) {
    const long long cls = class_size(N, mu);
    const long long fq = fixed_points(mu);
    const long long fi = fixed_weight_k(mu, s.k);
    const __int128 w = (__int128)cls * fq * fi;
    acc11 += w * mn_character(l11, mu);
    acc22 += w * mn_character(l22, mu);
    acc211 += w * mn_character(l211, mu);
  }
  Multiplicities m;
  m.n11 = (long long)(acc11 / fact);
  m.n22 = (long long)(acc22 / fact);
  m.n211 = (long long)(acc211 / fact);
  // U_Q (x) U_I with U_Q = (N) + (N-1,1) and U_I = sum_h (N-h,h):
  // four (N-1,1) instances, two (N-2,1,1) instances, and a fourth
  // (N-2,2) instance only when (N-3,3) is present in U_I.
  const unsigned c = s.classes;
  m.pred11 = (c >= 2) ? 4 : (c >= 1 ? 3 : 1);
  m.pred22 = (c >= 3) ? 4 : (c >= 2 ? 3 : (c >= 1 ? 1 : 0));
  m.pred211 = (c >= 2) ? 2 : (c >= 1 ? 1 : 0);
  return m;
}

StepBoundTraces stepbound_condition_traces(const JohnsonScheme& s) {
  const unsigned N = s.N, k = s.k;
  StepBoundTraces out;
  out.r1 = main_trace_identity(s).normalized;

  // Tr((Pi_Q^{(N-1,1)} x Pi_I^{(N-1,1)}) Pi^{(1)}) from the diagonals
  const Eigen::MatrixXd p1 = s.projector(1);
  double acc = 0.0;
  for (std::size_t zi = 0; zi < s.D; ++zi) {
    const std::uint32_t z = s.basis[zi];
    double fix = 0.0;
    for (unsigned x = 0; x < N; ++x)
      if ((z >> x) & 1u) fix += 1.0 - 1.0 / double(N);
    acc += fix * p1(Eigen::Index(zi), Eigen::Index(zi));
  }
  out.pi1_trace = acc;
  out.pi1_closed = double(k) * double(N - 1) * double(N - 1) / double(N);

  // r2 = Tr(Pi_{(N-1,1)}^{(N-1,1)_Q x (N-2,2)_I} Pi^{(1)}) / dim(N-1,1),
  // with the instance projector realized by character projection:
  // hatPi_theta = (dim theta / N!) sum_pi chi(pi) U_{Q,pi} (x) U_{I,pi}
  const Eigen::MatrixXd p2 = s.projector(2);
  std::vector<unsigned> l11{N - 1, 1};
  long long fact = 1;
  for (unsigned i = 2; i <= N; ++i) fact *= i;
  double sum = 0.0;
  for (const auto& mu : partitions_of(N)) {
    const long long cls = class_size(N, mu);
    const long long chi = mn_character(l11, mu);
    if (chi == 0) continue;
    const auto pi = representative(mu);
    double tpi = 0.0;
    for (std::size_t zi = 0; zi < s.D; ++zi) {
      const std::uint32_t z = s.basis[zi];
      const std::uint32_t zpre = apply_inverse_to_mask(pi, z);
      const auto pre_idx = s.index_of[zpre];
      const double ival = p2(Eigen::Index(pre_idx), Eigen::Index(zi));
      if (ival == 0.0) continue;
      // sum over x with z_x = 1 of (U_{Q,pi} Pi_Q^{(N-1,1)})_{xx}
      double qsum = 0.0;
      for (unsigned x = 0; x < N; ++x)
        if ((z >> x) & 1u) qsum += (pi[x] == x ? 1.0 : 0.0) - 1.0 / double(N);
      tpi += ival * qsum;
    }
    sum += double(cls) * double(chi) * tpi;
  }
  // (dim theta / N!) * sum, then normalized by dim theta
  out.r2 = sum / double(fact);
  return out;
}

FinalBoundRatios finalbound_ratios(const JohnsonScheme& s) {
  const unsigned N = s.N, k = s.k;
  if (N < 5) throw std::invalid_argument("finalbound: need N >= 5");
  FinalBoundRatios out;
  out.bound = 2.0 * double(k - 1) / double(N - 1);

  // |psi_x> = (1 / sqrt(C(N-1, k-1))) sum_{z : z_x = 1} |z>
  auto psi_x = [&](unsigned x) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(Eigen::Index(s.D));
    const double a = 1.0 / std::sqrt(double(choose_ll(N - 1, k - 1)));
    for (std::size_t zi = 0; zi < s.D; ++zi)
      if ((s.basis[zi] >> x) & 1u) v(Eigen::Index(zi)) = a;
    return v;
  };
  // hatPi keeps basis states with z_1 = z_2 = 1 (bits 0 and 1)
  auto project_hat = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd w = v;
    for (std::size_t zi = 0; zi < s.D; ++zi)
      if ((s.basis[zi] & 3u) != 3u) w(Eigen::Index(zi)) = 0.0;
    return w;
  };

  const Eigen::VectorXd u = psi_x(0) + psi_x(1);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(Eigen::Index(s.D));
  for (unsigned x = 2; x < N; ++x) v += psi_x(x);

  double best = 0.0;
  const int steps = 4096;
  constexpr double kPi = 3.14159265358979323846;
  for (int t = 0; t < steps; ++t) {
    const double th = double(t) * kPi / double(steps);
    const Eigen::VectorXd w = std::cos(th) * u + std::sin(th) * v;
    const double den = w.squaredNorm();
    if (den < 1e-12) continue;
    best = std::max(best, project_hat(w).squaredNorm() / den);
  }
  out.grid_max_ratio = best;

  out.psi12_projected_sqnorm = project_hat(psi_x(0) - psi_x(1)).squaredNorm();

  const Eigen::VectorXd d34 = psi_x(2) - psi_x(3);
  out.psi34_den = d34.squaredNorm();
  out.psi34_den_closed = 2.0 * double(N - k) / double(N - 1);
  out.psi34_ratio = project_hat(d34).squaredNorm() / out.psi34_den;
  out.form_intermediate = double(k - 1) * double(k - 2) / (double(N - 2) * double(N - 3));
  out.form_printed = double(k - 2) * double(k - 3) / (double(N - 2) * double(N - 3));
  const bool mi = std::fabs(out.psi34_ratio - out.form_intermediate) <= 1e-9;
  const bool mp = std::fabs(out.psi34_ratio - out.form_printed) <= 1e-9;
  out.matches = mi && mp ? "both" : mi ? "intermediate" : mp ? "printed" : "neither";
  return out;
}

std::array<double, 2> uniform_alpha(unsigned N, unsigned k) {
  const double ov = std::sqrt(double(k) / double(N));
  const double a = 1.0 / std::sqrt(2.0 + 2.0 * ov);
  return {a, a};
}

InitialBound initialbound_check(unsigned M, unsigned N, unsigned k, unsigned h,
                                const std::vector<std::array<double, 2>>& alpha) {
  if (alpha.size() != h) throw std::invalid_argument("initialbound: need one alpha pair per register");
  if (M < 1) throw std::invalid_argument("initialbound: M >= 1");
  auto s = build_scheme(N, k);
  const std::size_t D = s.D;
  double dm = 1.0;
  for (unsigned i = 0; i < M; ++i) dm *= double(D);
  if (dm > 4096.0) throw std::invalid_argument("initialbound: D^M beyond budget");
  const std::size_t DM = std::size_t(dm);

  // rho over H_I^{(x)M} is the Gram matrix of the resource states:
  // rho_{z, z'} = (1/D^M) prod_l <xi_l(z') | xi_l(z)>, and each factor
  // only needs <SigmaPsi(z')|SigmaPsi(z)> = sum_y |z_y cap z'_y| / (Mk)
  // plus the constant overlaps with SigmaPhi.
  const double ov_phi = std::sqrt(double(k) / double(N));  // <SigmaPsi|SigmaPhi>
  std::vector<std::uint32_t> digits(M), digits2(M);
  auto decode = [&](std::size_t idx, std::vector<std::uint32_t>& dig) {
    for (unsigned y = M; y-- > 0;) {
      dig[y] = std::uint32_t(idx % D);
      idx /= D;
    }
  };
  const Eigen::Index dmi = Eigen::Index(DM);
  Eigen::MatrixXd rho(dmi, dmi);
  for (std::size_t a = 0; a < DM; ++a) {
    decode(a, digits);
    for (std::size_t b = 0; b < DM; ++b) {
      decode(b, digits2);
      double psi_ov = 0.0;  // <SigmaPsi(z')|SigmaPsi(z)>
      for (unsigned y = 0; y < M; ++y)
        psi_ov += double(k - s.dist[std::size_t(digits[y]) * D + digits2[y]]);
      psi_ov /= double(M) * double(k);
      double prod = 1.0;
      for (unsigned l = 0; l < h; ++l) {
        const double a0 = alpha[l][0], a1 = alpha[l][1];
        prod *= a0 * a0 * psi_ov + a0 * a1 * ov_phi + a1 * a0 * ov_phi + a1 * a1;
      }
      rho(Eigen::Index(a), Eigen::Index(b)) = prod / dm;
    }
  }

  // Pi_a = (Pi^{(N)} + Pi^{(N-1,1)})^{(x)M}
  const Eigen::MatrixXd pa1 = s.projector(0) + s.projector(1);
  double trace_a = 0.0;
  for (std::size_t a = 0; a < DM; ++a) {
    decode(a, digits);
    for (std::size_t b = 0; b < DM; ++b) {
      decode(b, digits2);
      double entry = 1.0;
      for (unsigned y = 0; y < M && entry != 0.0; ++y)
        entry *= pa1(Eigen::Index(digits2[y]), Eigen::Index(digits[y]));
      if (entry != 0.0) trace_a += rho(Eigen::Index(a), Eigen::Index(b)) * entry;
    }
  }
  InitialBound out;
  out.p_b0 = std::max(0.0, 1.0 - trace_a);
  out.bound = double(h) * double(h) / (2.0 * double(M));
  out.birthday = double(h) * double(h - 1) / (2.0 * double(M));
  return out;
}

}  // namespace qpick::johnson
