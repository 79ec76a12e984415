#pragma once
// Exact verification of the representation-theoretic identities behind
// the query lower bound: Johnson association-scheme matrices A_i / C_j,
// irrep projectors Pi^{(N-h,h)}, the (1,s) subspace traces, the main
// trace identity, and the FinalBound / InitialBound / StepBound
// ingredient computations.
//
// Everything lives on the C(N,k)-dimensional space spanned by weight-k
// strings. Operators on the larger X (x) D space are contracted through
// the isometry W|z> = |Psi(z), z>, which is equivariant and keeps all
// matrices at C(N,k) size, or through character projection with
// fixed-point counts, so the sweep stays cheap up to N = 12.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qpick::johnson {

long long choose_ll(unsigned n, unsigned k);

// Exact rational arithmetic for the combinatorial formulas.
struct Frac {
  __int128 num = 0;
  __int128 den = 1;

  Frac() = default;
  Frac(long long n, long long d = 1);
  static Frac make(__int128 n, __int128 d);
  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator*(const Frac& o) const;
  Frac operator/(const Frac& o) const;
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  double to_double() const;
};

struct JohnsonScheme {
  unsigned N = 2;
  unsigned k = 1;
  std::size_t D = 0;        // C(N, k)
  unsigned classes = 0;     // min(k, N-k): largest nonzero distance
  std::vector<std::uint32_t> basis;       // weight-k bitmasks, ascending
  std::vector<std::int32_t> index_of;     // bitmask -> basis index
  std::vector<std::uint8_t> dist;         // D x D half Hamming distances
  std::vector<Eigen::MatrixXd> proj;      // spectral projectors, h = 0..classes

  std::uint8_t distance(std::size_t a, std::size_t b) const { return dist[a * D + b]; }
  // Projector onto the (N-h, h) eigenspace; zero matrix when the irrep
  // is absent (h > classes).
  Eigen::MatrixXd projector(unsigned h) const;
  Eigen::MatrixXd A(unsigned i) const;  // 0/1 association matrix
  Eigen::MatrixXd C(unsigned j) const;  // C_j = sum_i binom(k-i, j) A_i
};

// Budget: N <= 12 (combinatorics), 1 <= k <= N-1.
JohnsonScheme build_scheme(unsigned N, unsigned k);

// Eigenvalue of A_1 on the (N-h, h) eigenspace: (k-h)(N-k-h) - h.
long long a1_eigenvalue(unsigned N, unsigned k, unsigned h);
// Eigenvalue of C_j on the (N-h, h) eigenspace.
long long cj_eigenvalue(unsigned N, unsigned k, unsigned j, unsigned h);
// dim(N-h, h) = C(N, h) - C(N, h-1).
long long dim_two_row(unsigned N, unsigned h);
long long dim_hook_211(unsigned N);  // dim(N-2,1,1) = (N-1)(N-2)/2

// Pi^{(N-h,h)} from the alternating C_j sum (printed for h <= 2 only).
Eigen::MatrixXd projector_via_PviaC(const JohnsonScheme& s, unsigned h);
// The expanded A_i form of Pi^{(N-2,2)}.
Eigen::MatrixXd projector_via_PAssoc1(const JohnsonScheme& s);
// The A_i form of the (N-1,1) instance on the (1,s) subspace, pulled back
// through W; equals the spectral Pi^{(N-1,1)}.
Eigen::MatrixXd projector_via_PAssoc2(const JohnsonScheme& s);

struct OverlapEntry {
  unsigned i = 0, i2 = 0;
  Frac matrix_route;  // Tr((Id x A_i) A_{i2}^{(1,s)}) via pair counting
  Frac closed_form;   // delta_{i,i2} C(N,k) C(k,i) C(N-k,i) (k-i)/k
};
std::vector<OverlapEntry> overlap_traces(const JohnsonScheme& s);

struct TraceIdentity {
  double computed = 0.0;     // explicit matrices (spectral projectors)
  double closed_form = 0.0;  // (k-1)/k * N(N-k-1)/(N-2)
  Frac exact_computed;       // exact rational distance-class sum
  Frac exact_closed;
  double normalized = 0.0;   // divided by dim(N-1,1) = N-1
};
TraceIdentity main_trace_identity(const JohnsonScheme& s);

struct StepBoundTraces {
  double r1 = 0.0;          // normalized trace against Pi^{(1,s)}_{(N-1,1)}
  double r2 = 0.0;          // normalized trace against Pi^{(1)}
  double pi1_trace = 0.0;   // Tr((Pi_Q^{(N-1,1)} x Pi_I^{(N-1,1)}) Pi^{(1)})
  double pi1_closed = 0.0;  // k (N-1)^2 / N
};
StepBoundTraces stepbound_condition_traces(const JohnsonScheme& s);

struct FinalBoundRatios {
  double grid_max_ratio = 0.0;
  double bound = 0.0;  // 2(k-1)/(N-1)
  double psi12_projected_sqnorm = 0.0;
  double psi34_den = 0.0;
  double psi34_den_closed = 0.0;  // 2(N-k)/(N-1)
  double psi34_ratio = 0.0;
  double form_intermediate = 0.0;  // (k-1)(k-2)/((N-2)(N-3))
  double form_printed = 0.0;       // (k-2)(k-3)/((N-2)(N-3))
  std::string matches;             // "intermediate", "printed", "both", "neither"
};
FinalBoundRatios finalbound_ratios(const JohnsonScheme& s);

// Symmetric-group characters by the Murnaghan-Nakayama rule; lambda and
// mu are partitions of the same n (non-increasing).
long long mn_character(const std::vector<unsigned>& lambda, const std::vector<unsigned>& mu);
std::vector<std::vector<unsigned>> partitions_of(unsigned n);
long long class_size(unsigned n, const std::vector<unsigned>& mu);

struct Multiplicities {
  long long n11 = 0, n22 = 0, n211 = 0;        // counted by character projection
  long long pred11 = 0, pred22 = 0, pred211 = 0;  // from the tensor decomposition
};
// Multiplicities of (N-1,1), (N-2,2), (N-2,1,1) in U_Q (x) U_I.
Multiplicities irrep_multiplicities(const JohnsonScheme& s);

struct InitialBound {
  double p_b0 = 0.0;
  double bound = 0.0;        // h^2 / (2M)
  double birthday = 0.0;     // h(h-1) / (2M)
};
// Exact initial leakage outside the low-weight subspace for the M-fold
// world with h resource registers; alpha holds one (a0, a1) pair per
// register (unit-norm combinations of SigmaPsi(z) and SigmaPhi).
InitialBound initialbound_check(unsigned M, unsigned N, unsigned k, unsigned h,
                                const std::vector<std::array<double, 2>>& alpha);
// Unit-norm uniform coefficients for the space above.
std::array<double, 2> uniform_alpha(unsigned N, unsigned k);

}  // namespace qpick::johnson
