#pragma once
// Constructive side of the pick-one trick: E1 splits |SigmaPsi> into
// (y, |Psi(y)>), and E2 searches S_y for an element satisfying a
// predicate with the amplitude-amplification loop whose diffusion step
// is the O_F(y) reflection. E2's failure branch leaves the register in
// the |no> state, so a deterministic all-branches sweep enumerates the
// exact success probability.

#include <cstdint>
#include <vector>

#include "qpick/oracle_world.hpp"
#include "qpick/simcore.hpp"
#include "qpick/stats.hpp"

namespace qpick::pickone {

struct PickOneConfig {
  unsigned n = 10;         // failure target 2^-n
  double delta_min = 0.5;  // promised lower bound on |P cap S_y| / |S_y|
  void validate() const;
};

// ceil(log2(pi / (2 sqrt(delta_min)))), clamped to at least one round;
// base-2 logarithm throughout.
unsigned j_rounds(double delta_min);

struct E1Result {
  std::uint32_t y = 0;
  sim::AmplitudeVector psi;  // |Psi(y)> on the X register
};
E1Result E1(const sim::AmplitudeVector& sigma_psi_state, sim::RandomSource& rng);

struct E2Result {
  bool success = false;
  std::uint32_t x = 0;
  sim::AmplitudeVector residual;  // |no> after a failed run; reusable
  unsigned outer_iterations = 0;
  unsigned measurements = 0;
  std::uint64_t o_f_queries = 0;
};

// One E2 run. `psi_state` is |Psi(y)> (or the |no> residual of an
// earlier run); `pred` is a 0/1 mask over X. A nonzero `query_budget`
// caps the number of O_F applications; exceeding it reports failure.
E2Result E2(const PickOneConfig& cfg, const world::AttackOracles& oracles, std::uint32_t y,
            sim::AmplitudeVector psi_state, const std::vector<std::uint8_t>& pred,
            sim::RandomSource& rng, std::uint64_t query_budget = 0);
// Same run against a bare instance (the reflection axis plays O_F(y)).
E2Result E2(const PickOneConfig& cfg, const world::TwoValuesInstance& inst, std::uint32_t y,
            sim::AmplitudeVector psi_state, const std::vector<std::uint8_t>& pred,
            sim::RandomSource& rng, std::uint64_t query_budget = 0);

// Exact success probability by walking the deterministic failure path and
// accumulating both branches of every projective measurement.
double E2_exact_success(const PickOneConfig& cfg, const world::TwoValuesInstance& inst,
                        std::uint32_t y, const std::vector<std::uint8_t>& pred,
                        std::uint64_t query_budget = 0);
double E2_exact_success_from(const PickOneConfig& cfg, const world::TwoValuesInstance& inst,
                             std::uint32_t y, const sim::AmplitudeVector& start,
                             const std::vector<std::uint8_t>& pred, std::uint64_t query_budget = 0);

// Exact probability that one full j-sweep starting from |no> fails; the
// quantity bounded by 1/2 in the success-probability argument.
double E2_sweep_failure_from_no(const PickOneConfig& cfg, const world::TwoValuesInstance& inst,
                                std::uint32_t y, const std::vector<std::uint8_t>& pred);

enum class CollisionStrategy {
  MeasureThenGuess,
  MeasureThenGroverResidual,
  DoubleE2DisjointPredicates,
};
const char* strategy_name(CollisionStrategy s);

struct CollisionReport {
  CollisionStrategy strategy;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0.0;
  stats::WilsonInterval interval;
  double exact_mean = 0.0;  // mean of per-trial exact success probabilities
  double exact_sigma = 0.0; // stddev of the MC success count / trials
};

// Bounded naive adversaries against the Two Values problem: produce
// distinct x1, x2 in one S_y from a single |SigmaPsi> copy plus oracle
// access. No optimality is claimed for any of them.
CollisionReport collision_experiment(CollisionStrategy strategy, const world::TwoValuesParams& params,
                                     const PickOneConfig& cfg, std::uint64_t q_budget,
                                     std::size_t trials, sim::RandomSource& rng);

}  // namespace qpick::pickone
