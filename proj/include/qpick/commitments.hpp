#pragma once
// The oracle-backed commitment scheme: each message bit is masked by one
// bit of a hidden set element obtained from O_S, verified through O_V.
// Computationally binding yet equivocable: B1 commits blind, B2 opens to
// any message by Grover-searching S_y for elements with the right mask
// bit. COMstar/COMopenstar give the fixpoint commitments the Fischlin
// attack needs.

#include <cstdint>
#include <utility>
#include <vector>

#include "qpick/oracle_world.hpp"
#include "qpick/pickone.hpp"
#include "qpick/simcore.hpp"

namespace qpick::commit {

struct Commitment {
  std::vector<std::uint32_t> positions;  // p_i in {1, .., l_ch + l_resp}
  std::vector<std::uint32_t> anchors;    // y_i in Y
  std::vector<std::uint8_t> masks;       // b_i bits
  std::size_t size() const { return positions.size(); }
  bool well_formed() const {
    return anchors.size() == positions.size() && masks.size() == positions.size();
  }
};

struct Opening {
  std::vector<std::uint32_t> xs;  // one element of X per message bit
};

// Honest commitment: z_i fresh, (y_i, x_i) = O_S(z_i), p_i uniform
// position, b_i = m_i xor bit_{p_i}(x_i).
std::pair<Commitment, Opening> commit(const std::vector<std::uint8_t>& msg,
                                      const world::OracleWorld& w, sim::RandomSource& rng);

// 1 iff lengths match, every x_i passes O_V(y_i, x_i), and every mask
// equation holds. Returns 0 on malformed shapes.
int verify(const Commitment& c, const std::vector<std::uint8_t>& msg, const Opening& u,
           const world::OracleWorld& w);

// Equivocation adversary. B1 commits before knowing the message; its
// internal per-bit states (one |Psi(y_i)> each) are consumed by B2.
struct B1State {
  Commitment c;
  std::vector<sim::AmplitudeVector> psis;
};
B1State attack_B1(std::size_t len, const world::AttackOracles& oracles, sim::RandomSource& rng);

struct B2Result {
  Opening u;
  std::vector<std::uint8_t> bit_ok;  // per-bit E2 success
  bool all_ok = true;
};
// Opens to msg with per-bit predicate bit_{p_i}(x) == b_i xor m_i via
// E2(n = l_com, delta_min = 1/3) unless overridden.
B2Result attack_B2(const std::vector<std::uint8_t>& msg, B1State& st,
                   const world::AttackOracles& oracles, sim::RandomSource& rng,
                   unsigned n_override = 0, double delta_min = 1.0 / 3.0);

// Exact probability that B2 opens the whole message, composed from the
// per-bit branch enumeration on the states B1 holds.
double attack_exact_success(const std::vector<std::uint8_t>& msg, const B1State& st,
                            const world::TwoValuesInstance& inst, const world::WorldParams& p,
                            unsigned n_override = 0, double delta_min = 1.0 / 3.0);

// Fixpoint commitment: opens to resp for every (ch, resp) in S_com.
Commitment comstar(std::uint32_t com, const world::WorldParams& p);
Opening comopenstar(std::uint32_t ch, std::uint32_t resp, const world::WorldParams& p);

// Predicate mask for one bit: bit_p(x) == target over all x in X.
std::vector<std::uint8_t> bit_predicate(const world::WorldParams& p, std::uint32_t pos,
                                        unsigned target);

}  // namespace qpick::commit
