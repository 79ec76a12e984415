#pragma once
// The relativized world the attacks run against: a Two Values instance
// (one hidden k-subset S_y of X per y in Y) plus the seven oracles
// O_E, O_P, O_R, O_S, O_F, O_Psi, O_V, served both as classical
// functions and as quantum operators on statevectors.
//
// Bit packing: x = (ch, resp) keeps ch in the low l_ch bits, resp above
// it; bit positions are 1-indexed from the least significant bit.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qpick/simcore.hpp"

#include <nlohmann/json.hpp>

namespace qpick::world {

struct TwoValuesParams {
  std::size_t M = 1;  // |Y|
  std::size_t N = 2;  // |X|
  std::size_t k = 1;  // |S_y|
  void validate() const;
};

struct TwoValuesInstance {
  TwoValuesParams params;
  std::vector<std::vector<std::uint32_t>> sets;  // sorted k-subset per y

  bool contains(std::uint32_t y, std::uint32_t x) const;
  const std::vector<std::uint32_t>& set_of(std::uint32_t y) const { return sets.at(y); }
};

TwoValuesInstance sample_instance(const TwoValuesParams& params, sim::RandomSource& rng);

// |Psi(y)> on the X register: amplitude 1/sqrt(k) on each x in S_y.
sim::AmplitudeVector psi_y(const TwoValuesInstance& inst, std::uint32_t y);
// |SigmaPsi> on (Y, X) and |SigmaPhi> uniform on (Y, X).
sim::AmplitudeVector sigma_psi(const TwoValuesInstance& inst);
sim::AmplitudeVector sigma_phi(const TwoValuesParams& params);
// Embedding of |SigmaPsi> into the (M*N + 1)-dimensional space whose last
// basis direction is the bot state used by O_Psi.
sim::AmplitudeVector sigma_psi_ext(const TwoValuesInstance& inst);
sim::AmplitudeVector bot_state(const TwoValuesParams& params);

// Quantum oracle applicators. All are unitary and self-inverse.
sim::AmplitudeVector apply_O_V_xor(const TwoValuesInstance& inst, const sim::AmplitudeVector& state);
sim::AmplitudeVector apply_O_V_phase(const TwoValuesInstance& inst, const sim::AmplitudeVector& state);
sim::AmplitudeVector apply_O_F(const TwoValuesInstance& inst, const sim::AmplitudeVector& state);
sim::AmplitudeVector apply_O_Psi(const TwoValuesInstance& inst, const sim::AmplitudeVector& state);

struct WorldParams {
  unsigned l_com = 4;
  unsigned l_ch = 2;
  unsigned l_resp = 6;

  unsigned l_rand() const { return l_com + l_resp; }
  std::uint64_t M() const { return 1ull << l_com; }
  std::uint64_t n_ch() const { return 1ull << l_ch; }
  std::uint64_t n_resp() const { return 1ull << l_resp; }
  std::uint64_t N() const { return 1ull << (l_ch + l_resp); }
  std::uint64_t k() const { return 1ull << (l_ch + l_resp / 3); }
  void validate() const;

  std::uint32_t pack_x(std::uint32_t ch, std::uint32_t resp) const {
    return ch | (resp << l_ch);
  }
  std::uint32_t ch_of(std::uint32_t x) const { return x & ((1u << l_ch) - 1); }
  std::uint32_t resp_of(std::uint32_t x) const { return x >> l_ch; }
};

// p in {1, .., l_ch + l_resp}, position 1 = least significant bit.
inline unsigned bit_at(std::uint64_t x, unsigned p) { return (x >> (p - 1)) & 1ull; }

// Answer of O_P: a response, the explicit bot answer (no response exists
// for this (com, ch)), or the zero answer given to wrong witnesses.
struct OpAnswer {
  enum class Kind { Resp, Bot, Zero } kind = Kind::Zero;
  std::uint32_t resp = 0;
};

class OracleWorld {
 public:
  OracleWorld(const WorldParams& params, std::uint64_t seed);

  const WorldParams& params() const { return params_; }
  const TwoValuesInstance& instance() const { return instance_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t s0() const { return 0; }
  std::uint64_t w0() const { return w0_; }

  // Classical oracles (function semantics; memoized where randomized).
  std::pair<std::uint32_t, std::uint32_t> oracle_S(std::uint64_t z) const;  // (y, x in S_y)
  OpAnswer oracle_P(std::uint64_t w, std::uint32_t com, std::uint32_t ch, std::uint64_t z) const;
  std::optional<std::uint64_t> oracle_E(std::uint32_t com, std::uint32_t ch, std::uint32_t resp,
                                        std::uint32_t ch2, std::uint32_t resp2) const;
  int oracle_R(std::uint64_t s, std::uint64_t w) const;
  int oracle_V(std::uint32_t y, std::uint32_t x) const;

  std::size_t memoized_S_entries() const;
  std::size_t memoized_P_entries() const;

  nlohmann::ordered_json to_json() const;

 private:
  WorldParams params_;
  std::uint64_t seed_;
  std::uint64_t w0_;
  TwoValuesInstance instance_;
  mutable std::mutex mu_;
  mutable sim::RandomSource lazy_rng_;
  mutable std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> os_table_;
  mutable std::unordered_map<std::uint64_t, std::optional<std::uint32_t>> op_table_;
};

// Capability view handed to attack code: every oracle except O_E, and no
// access to w0. Realizes the information separation between adversaries
// and extractors; test_protocols statically audits the surface.
class AttackOracles {
 public:
  explicit AttackOracles(const OracleWorld& w) : w_(w) {}

  const WorldParams& params() const { return w_.params(); }
  std::uint64_t s0() const { return w_.s0(); }
  int oracle_V(std::uint32_t y, std::uint32_t x) const { return w_.oracle_V(y, x); }
  std::pair<std::uint32_t, std::uint32_t> oracle_S(std::uint64_t z) const { return w_.oracle_S(z); }
  OpAnswer oracle_P(std::uint64_t w, std::uint32_t com, std::uint32_t ch, std::uint64_t z) const {
    return w_.oracle_P(w, com, ch, z);
  }
  int oracle_R(std::uint64_t s, std::uint64_t w) const { return w_.oracle_R(s, w); }

  // Quantum resources: one O_Psi query producing |SigmaPsi> from bot, and
  // the O_F reflection on an X-register state with Y pinned to y.
  sim::AmplitudeVector make_sigma_psi() const;
  sim::AmplitudeVector apply_O_F_at(std::uint32_t y, const sim::AmplitudeVector& x_state) const;
  std::uint64_t o_f_queries() const { return of_queries_; }

 private:
  friend struct AttackOraclesAudit;
  const OracleWorld& w_;
  mutable std::uint64_t of_queries_ = 0;
};

// Capability view for extractor harnesses: O_E plus budgeted classical
// access. Budgets are config knobs of the harness.
class ExtractorOracles {
 public:
  ExtractorOracles(const OracleWorld& w, std::uint64_t q_S, std::uint64_t q_V, std::uint64_t q_E)
      : w_(w), budget_S_(q_S), budget_V_(q_V), budget_E_(q_E) {}

  const WorldParams& params() const { return w_.params(); }
  std::uint64_t s0() const { return w_.s0(); }
  std::optional<std::pair<std::uint32_t, std::uint32_t>> sample_S(sim::RandomSource& rng) const;
  std::optional<int> oracle_V(std::uint32_t y, std::uint32_t x) const;
  std::optional<std::optional<std::uint64_t>> oracle_E(std::uint32_t com, std::uint32_t ch,
                                                       std::uint32_t resp, std::uint32_t ch2,
                                                       std::uint32_t resp2) const;
  int oracle_R(std::uint64_t s, std::uint64_t w) const { return w_.oracle_R(s, w); }

 private:
  const OracleWorld& w_;
  mutable std::uint64_t budget_S_, budget_V_, budget_E_;
};

}  // namespace qpick::world
