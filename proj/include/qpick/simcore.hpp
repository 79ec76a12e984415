#pragma once
// Minimal dense statevector kernel: normalized complex amplitude vectors
// over composite registers, reflections, diagonal phase oracles,
// projective measurement, and distance utilities.
//
// Register convention: dims[0] is the most significant register, so for
// dims {M, N} the flat index of |y>|x> is y*N + x.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "qpick/kernels.hpp"

namespace qpick::sim {

using cplx = std::complex<double>;

inline constexpr double kNormTol = 1e-9;     // norm / idempotence checks
inline constexpr double kCircuitTol = 1e-7;  // multi-step circuit identities

// Deterministic randomness. Identical seeds give identical transcripts;
// per-trial generators are derived in counter mode via fork() so results
// do not depend on worker count.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);
  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64();
  double next_double();  // uniform [0,1)
  std::uint64_t uniform_below(std::uint64_t bound);
  RandomSource fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

struct AmplitudeVector {
  std::vector<std::size_t> dims;
  std::vector<cplx> amps;

  AmplitudeVector() = default;
  static AmplitudeVector zero(std::vector<std::size_t> dims);
  static AmplitudeVector basis(std::vector<std::size_t> dims, std::size_t index);
  static AmplitudeVector uniform(std::vector<std::size_t> dims);

  std::size_t dim() const;
  double sqnorm() const { return kernels::sqnorm(amps.data(), amps.size()); }
  double norm() const;
  bool is_normalized(double tol = kNormTol) const;
  void normalize();
  cplx inner(const AmplitudeVector& other) const;  // <this|other>
};

struct MeasurementOutcome {
  std::size_t outcome = 0;
  double probability = 0.0;
  AmplitudeVector post_state;
};

// One branch of a deterministic (all-branches) measurement. A
// zero-probability branch carries no state.
struct MeasurementBranch {
  std::size_t outcome = 0;
  double probability = 0.0;
  std::optional<AmplitudeVector> post_state;
};

// (I - 2|axis><axis|) applied on one register (every block of the other
// registers). axis.dim() must equal dims[target_register].
AmplitudeVector reflect_about(const AmplitudeVector& state, const AmplitudeVector& axis,
                              std::size_t target_register);
// Same reflection on the full index space (axis.dim() == state.dim()).
AmplitudeVector reflect_about_full(const AmplitudeVector& state, const AmplitudeVector& axis);
// In-place variant on a raw block.
void reflect_block(cplx* block, const cplx* axis, std::size_t n);

AmplitudeVector apply_phase_predicate(const AmplitudeVector& state,
                                      const std::vector<std::uint8_t>& mask);
AmplitudeVector apply_phase_predicate(const AmplitudeVector& state,
                                      const std::function<bool(std::size_t)>& pred);

MeasurementOutcome measure_projector(const AmplitudeVector& state,
                                     const std::vector<std::uint8_t>& mask, RandomSource& rng);
// Deterministic variant: both branches (outcome 1 first) with exact
// probabilities.
std::pair<MeasurementBranch, MeasurementBranch> measure_projector_branches(
    const AmplitudeVector& state, const std::vector<std::uint8_t>& mask);

MeasurementOutcome measure_computational(const AmplitudeVector& state, std::size_t target_register,
                                         RandomSource& rng);
std::vector<MeasurementBranch> measure_computational_branches(const AmplitudeVector& state,
                                                              std::size_t target_register);

// sqrt(1 - |<a|b>|^2); both states normalized, same dims.
double trace_distance_pure(const AmplitudeVector& a, const AmplitudeVector& b);

// 1/2 sum |p_i - q_i| over a common indexed support.
double statistical_distance(const std::vector<double>& p, const std::vector<double>& q);

// |<a|b>| for comparisons up to global phase.
double overlap_mod(const AmplitudeVector& a, const AmplitudeVector& b);

}  // namespace qpick::sim
