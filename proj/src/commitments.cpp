#include "qpick/commitments.hpp"

#include <stdexcept>

namespace qpick::commit {

std::pair<Commitment, Opening> commit(const std::vector<std::uint8_t>& msg,
                                      const world::OracleWorld& w, sim::RandomSource& rng) {
  const auto& p = w.params();
  Commitment c;
  Opening u;
  const unsigned bits = p.l_ch + p.l_resp;
  for (auto mi : msg) {
    const std::uint64_t z = rng.uniform_below(1ull << p.l_rand());
    const auto [y, x] = w.oracle_S(z);
    const auto pos = std::uint32_t(1 + rng.uniform_below(bits));
    c.positions.push_back(pos);
    c.anchors.push_back(y);
    c.masks.push_back(std::uint8_t((mi ^ world::bit_at(x, pos)) & 1));
    u.xs.push_back(x);
  }
  return {c, u};
}

int verify(const Commitment& c, const std::vector<std::uint8_t>& msg, const Opening& u,
           const world::OracleWorld& w) {
  if (!c.well_formed()) return 0;
  if (msg.size() != c.size() || u.xs.size() != c.size()) return 0;
  const unsigned bits = w.params().l_ch + w.params().l_resp;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.positions[i] < 1 || c.positions[i] > bits) return 0;
    if (w.oracle_V(c.anchors[i], u.xs[i]) != 1) return 0;
    if (((msg[i] ^ world::bit_at(u.xs[i], c.positions[i])) & 1) != c.masks[i]) return 0;
  }
  return 1;
}

B1State attack_B1(std::size_t len, const world::AttackOracles& oracles, sim::RandomSource& rng) {
  const auto& p = oracles.params();
  const unsigned bits = p.l_ch + p.l_resp;
  B1State st;
  for (std::size_t i = 0; i < len; ++i) {
    auto e1 = pickone::E1(oracles.make_sigma_psi(), rng);
    st.c.positions.push_back(std::uint32_t(1 + rng.uniform_below(bits)));
    st.c.anchors.push_back(e1.y);
    st.c.masks.push_back(std::uint8_t(rng.uniform_below(2)));
    st.psis.push_back(std::move(e1.psi));
  }
  return st;
}

std::vector<std::uint8_t> bit_predicate(const world::WorldParams& p, std::uint32_t pos,
                                        unsigned target) {
  std::vector<std::uint8_t> mask(p.N());
  for (std::uint64_t x = 0; x < p.N(); ++x)
    mask[x] = world::bit_at(x, pos) == (target & 1) ? 1 : 0;
  return mask;
}

B2Result attack_B2(const std::vector<std::uint8_t>& msg, B1State& st,
                   const world::AttackOracles& oracles, sim::RandomSource& rng,
                   unsigned n_override, double delta_min) {
  if (msg.size() != st.c.size()) throw std::invalid_argument("B2: message length mismatch");
  const auto& p = oracles.params();
  pickone::PickOneConfig cfg{n_override ? n_override : p.l_com, delta_min};
  B2Result res;
  for (std::size_t i = 0; i < msg.size(); ++i) {
    const unsigned want = (st.c.masks[i] ^ msg[i]) & 1;
    auto pred = bit_predicate(p, st.c.positions[i], want);
    auto r = pickone::E2(cfg, oracles, st.c.anchors[i], std::move(st.psis[i]), pred, rng);
    st.psis[i] = std::move(r.residual);  // consumed either way
    res.bit_ok.push_back(r.success ? 1 : 0);
    res.all_ok = res.all_ok && r.success;
    res.u.xs.push_back(r.success ? r.x : 0);
  }
  return res;
}

double attack_exact_success(const std::vector<std::uint8_t>& msg, const B1State& st,
                            const world::TwoValuesInstance& inst, const world::WorldParams& p,
                            unsigned n_override, double delta_min) {
  if (msg.size() != st.c.size()) throw std::invalid_argument("message length mismatch");
  pickone::PickOneConfig cfg{n_override ? n_override : p.l_com, delta_min};
  double prob = 1.0;
  for (std::size_t i = 0; i < msg.size(); ++i) {
    const unsigned want = (st.c.masks[i] ^ msg[i]) & 1;
    auto pred = bit_predicate(p, st.c.positions[i], want);
    prob *= pickone::E2_exact_success(cfg, inst, st.c.anchors[i], pred);
  }
  return prob;
}

Commitment comstar(std::uint32_t com, const world::WorldParams& p) {
  Commitment c;
  for (std::uint32_t i = 1; i <= p.l_resp; ++i) {
    c.positions.push_back(p.l_ch + i);  // selects bit i of resp in the packed x
    c.anchors.push_back(com);
    c.masks.push_back(0);
  }
  return c;
}

Opening comopenstar(std::uint32_t ch, std::uint32_t resp, const world::WorldParams& p) {
  Opening u;
  const auto x = p.pack_x(ch, resp);
  u.xs.assign(p.l_resp, x);
  return u;
}

}  // namespace qpick::commit
