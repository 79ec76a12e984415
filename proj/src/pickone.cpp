#include "qpick/pickone.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qpick::pickone {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void PickOneConfig::validate() const {
  if (!(delta_min > 0.0) || delta_min > 1.0)
    throw std::invalid_argument("pick-one config: delta_min must be in (0,1]");
}

unsigned j_rounds(double delta_min) {
  const double raw = std::log2(kPi / (2.0 * std::sqrt(delta_min)));
  const double c = std::ceil(raw);
  return c < 1.0 ? 1u : unsigned(c);
}

E1Result E1(const sim::AmplitudeVector& sigma_psi_state, sim::RandomSource& rng) {
  if (sigma_psi_state.dims.size() != 2) throw std::invalid_argument("E1: expected a (Y, X) state");
  auto out = sim::measure_computational(sigma_psi_state, 0, rng);
  const std::size_t N = sigma_psi_state.dims[1];
  E1Result r;
  r.y = std::uint32_t(out.outcome);
  r.psi = sim::AmplitudeVector::zero({N});
  std::copy(out.post_state.amps.begin() + out.outcome * N,
            out.post_state.amps.begin() + (out.outcome + 1) * N, r.psi.amps.begin());
  return r;
}

namespace {

using Reflect = std::function<sim::AmplitudeVector(const sim::AmplitudeVector&)>;
using Member = std::function<bool(std::uint32_t)>;

E2Result e2_impl(const PickOneConfig& cfg, const Reflect& reflect, const Member& member,
                 sim::AmplitudeVector state, const std::vector<std::uint8_t>& pred,
                 sim::RandomSource& rng, std::uint64_t query_budget) {
  cfg.validate();
  if (pred.size() != state.dim()) throw std::invalid_argument("E2: predicate mask size mismatch");
  const unsigned J = j_rounds(cfg.delta_min);
  E2Result res;
  for (unsigned i = 1; i <= cfg.n + 1; ++i) {
    ++res.outer_iterations;
    for (unsigned j = 1; j <= J; ++j) {
      const std::uint64_t reps = 1ull << (j - 1);
      for (std::uint64_t t = 0; t < reps; ++t) {
        if (query_budget != 0 && res.o_f_queries >= query_budget) {
          res.residual = std::move(state);
          return res;  // budget exhausted: explicit failure
        }
        state = reflect(apply_phase_predicate(state, pred));
        ++res.o_f_queries;
      }
      auto out = sim::measure_projector(state, pred, rng);
      ++res.measurements;
      if (out.outcome == 1) {
        auto x_out = sim::measure_computational(out.post_state, 0, rng);
        const auto x = std::uint32_t(x_out.outcome);
        // The projector guarantees P(x) = 1; membership can only fail if
        // the input state had support outside the S_y span, which the
        // caller was not supposed to do. Surface it as a failed run.
        if (!member(x)) {
          res.residual = std::move(x_out.post_state);
          return res;
        }
        res.success = true;
        res.x = x;
        res.residual = std::move(x_out.post_state);
        return res;
      }
      state = std::move(out.post_state);
    }
  }
  res.residual = std::move(state);  // |no> when the input was well-formed
  return res;
}

}  // namespace

E2Result E2(const PickOneConfig& cfg, const world::AttackOracles& oracles, std::uint32_t y,
            sim::AmplitudeVector psi_state, const std::vector<std::uint8_t>& pred,
            sim::RandomSource& rng, std::uint64_t query_budget) {
  Reflect reflect = [&](const sim::AmplitudeVector& s) { return oracles.apply_O_F_at(y, s); };
  Member member = [&](std::uint32_t x) { return oracles.oracle_V(y, x) == 1; };
  return e2_impl(cfg, reflect, member, std::move(psi_state), pred, rng, query_budget);
}

E2Result E2(const PickOneConfig& cfg, const world::TwoValuesInstance& inst, std::uint32_t y,
            sim::AmplitudeVector psi_state, const std::vector<std::uint8_t>& pred,
            sim::RandomSource& rng, std::uint64_t query_budget) {
  const auto axis = psi_y(inst, y);
  Reflect reflect = [&](const sim::AmplitudeVector& s) {
    sim::AmplitudeVector out = s;
    sim::reflect_block(out.amps.data(), axis.amps.data(), out.amps.size());
    return out;
  };
  Member member = [&](std::uint32_t x) { return inst.contains(y, x); };
  return e2_impl(cfg, reflect, member, std::move(psi_state), pred, rng, query_budget);
}

double E2_exact_success_from(const PickOneConfig& cfg, const world::TwoValuesInstance& inst,
                             std::uint32_t y, const sim::AmplitudeVector& start,
                             const std::vector<std::uint8_t>& pred, std::uint64_t query_budget) {
  cfg.validate();
  if (pred.size() != start.dim()) throw std::invalid_argument("E2 exact: mask size mismatch");
  const auto axis = psi_y(inst, y);
  const unsigned J = j_rounds(cfg.delta_min);
  sim::AmplitudeVector state = start;
  double reach = 1.0;
  double success = 0.0;
  std::uint64_t queries = 0;
  for (unsigned i = 1; i <= cfg.n + 1; ++i) {
    for (unsigned j = 1; j <= J; ++j) {
      const std::uint64_t reps = 1ull << (j - 1);
      for (std::uint64_t t = 0; t < reps; ++t) {
        if (query_budget != 0 && queries >= query_budget) return success;
        state = apply_phase_predicate(state, pred);
        sim::reflect_block(state.amps.data(), axis.amps.data(), state.amps.size());
        ++queries;
      }
      auto [b1, b0] = sim::measure_projector_branches(state, pred);
      success += reach * b1.probability;
      if (!b0.post_state) return success;
      reach *= b0.probability;
      if (reach < 1e-300) return success;
      state = std::move(*b0.post_state);
    }
  }
  return success;
}

double E2_exact_success(const PickOneConfig& cfg, const world::TwoValuesInstance& inst,
                        std::uint32_t y, const std::vector<std::uint8_t>& pred,
                        std::uint64_t query_budget) {
  return E2_exact_success_from(cfg, inst, y, psi_y(inst, y), pred, query_budget);
}

double E2_sweep_failure_from_no(const PickOneConfig& cfg, const world::TwoValuesInstance& inst,
                                std::uint32_t y, const std::vector<std::uint8_t>& pred) {
  const auto& set = inst.set_of(y);
  std::vector<std::uint32_t> no_set;
  for (auto x : set)
    if (!pred[x]) no_set.push_back(x);
  if (no_set.empty()) return 0.0;  // no |no> state exists; sweeps never run from it
  auto state = sim::AmplitudeVector::zero({inst.params.N});
  const double a = 1.0 / std::sqrt(double(no_set.size()));
  for (auto x : no_set) state.amps[x] = a;

  const auto axis = psi_y(inst, y);
  const unsigned J = j_rounds(cfg.delta_min);
  double fail = 1.0;
  for (unsigned j = 1; j <= J; ++j) {
    const std::uint64_t reps = 1ull << (j - 1);
    for (std::uint64_t t = 0; t < reps; ++t) {
      state = apply_phase_predicate(state, pred);
      sim::reflect_block(state.amps.data(), axis.amps.data(), state.amps.size());
    }
    auto [b1, b0] = sim::measure_projector_branches(state, pred);
    fail *= b0.probability;
    if (!b0.post_state) return 0.0;
    state = std::move(*b0.post_state);
  }
  return fail;
}

const char* strategy_name(CollisionStrategy s) {
  switch (s) {
    case CollisionStrategy::MeasureThenGuess:
      return "measure-then-guess";
    case CollisionStrategy::MeasureThenGroverResidual:
      return "measure-then-grover-residual";
    case CollisionStrategy::DoubleE2DisjointPredicates:
      return "double-E2-disjoint-predicates";
  }
  return "?";
}

CollisionReport collision_experiment(CollisionStrategy strategy, const world::TwoValuesParams& params,
                                     const PickOneConfig& cfg, std::uint64_t q_budget,
                                     std::size_t trials, sim::RandomSource& rng) {
  params.validate();
  CollisionReport rep;
  rep.strategy = strategy;
  rep.trials = trials;
  double exact_sum = 0.0, var_sum = 0.0;

  for (std::size_t t = 0; t < trials; ++t) {
    sim::RandomSource trial_rng = rng.fork(t);
    auto inst = sample_instance(params, trial_rng);
    auto e1 = E1(sigma_psi(inst), trial_rng);
    const std::size_t N = params.N;
    bool success = false;
    double exact = 0.0;

    switch (strategy) {
      case CollisionStrategy::MeasureThenGuess: {
        auto m = sim::measure_computational(e1.psi, 0, trial_rng);
        const auto x1 = std::uint32_t(m.outcome);
        const auto x2 = std::uint32_t(trial_rng.uniform_below(N));
        success = x2 != x1 && inst.contains(e1.y, x2);
        exact = double(params.k - 1) / double(N);
        break;
      }
      case CollisionStrategy::MeasureThenGroverResidual: {
        auto m = sim::measure_computational(e1.psi, 0, trial_rng);
        const auto x1 = std::uint32_t(m.outcome);
        std::vector<std::uint8_t> pred(N, 1);
        pred[x1] = 0;
        auto start = sim::AmplitudeVector::basis({N}, x1);
        auto r = E2(cfg, inst, e1.y, start, pred, trial_rng, q_budget);
        success = r.success;
        exact = E2_exact_success_from(cfg, inst, e1.y, start, pred, q_budget);
        break;
      }
      case CollisionStrategy::DoubleE2DisjointPredicates: {
        std::vector<std::uint8_t> p1(N), p2(N);
        for (std::size_t x = 0; x < N; ++x) {
          p1[x] = std::uint8_t(x & 1u);
          p2[x] = std::uint8_t(1u - (x & 1u));
        }
        auto r1 = E2(cfg, inst, e1.y, e1.psi, p1, trial_rng, q_budget);
        if (r1.success) {
          auto r2 = E2(cfg, inst, e1.y, r1.residual, p2, trial_rng, q_budget);
          success = r2.success;
        }
        const double first = E2_exact_success(cfg, inst, e1.y, p1, q_budget);
        double second = 0.0;
        for (auto x : inst.set_of(e1.y))
          if (p1[x]) {
            second = E2_exact_success_from(cfg, inst, e1.y, sim::AmplitudeVector::basis({N}, x), p2,
                                           q_budget);
            break;  // identical for every member of S_y with p1(x)=1
          }
        exact = first * second;
        break;
      }
    }
    rep.successes += success ? 1 : 0;
    exact_sum += exact;
    var_sum += exact * (1.0 - exact);
  }

  rep.rate = trials ? double(rep.successes) / double(trials) : 0.0;
  rep.interval = stats::wilson(rep.successes, trials);
  rep.exact_mean = trials ? exact_sum / double(trials) : 0.0;
  rep.exact_sigma = trials ? std::sqrt(var_sum) / double(trials) : 0.0;
  return rep;
}

}  // namespace qpick::pickone
