#include "qpick/protocols.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qpick/pickone.hpp"

namespace qpick::proto {

std::vector<std::uint8_t> resp_to_msg(std::uint32_t resp, unsigned l_resp) {
  std::vector<std::uint8_t> msg(l_resp);
  for (unsigned i = 0; i < l_resp; ++i) msg[i] = (resp >> i) & 1;
  return msg;
}

std::pair<SigmaCommitment, ProverState> sigma_prove_P1(std::uint64_t s, std::uint64_t w,
                                                       const world::OracleWorld& world,
                                                       sim::RandomSource& rng) {
  (void)s;
  const auto& p = world.params();
  SigmaCommitment cs;
  ProverState st;
  st.com = cs.com = std::uint32_t(rng.uniform_below(p.M()));
  for (std::uint32_t ch = 0; ch < p.n_ch(); ++ch) {
    const std::uint64_t z = rng.uniform_below(1ull << p.l_rand());
    const auto ans = world.oracle_P(w, cs.com, ch, z);
    // A missing response (bot, or the zero answer for a wrong witness)
    // is committed as the all-zero string; that branch simply fails
    // verification if challenged.
    const std::uint32_t resp = ans.kind == world::OpAnswer::Kind::Resp ? ans.resp : 0;
    auto [c, u] = commit::commit(resp_to_msg(resp, p.l_resp), world, rng);
    cs.c.push_back(std::move(c));
    st.resps.push_back(resp);
    st.have_resp.push_back(ans.kind == world::OpAnswer::Kind::Resp ? 1 : 0);
    st.openings.push_back(std::move(u));
  }
  return {cs, st};
}

SigmaResponse sigma_prove_P2(std::uint32_t ch, const ProverState& st) {
  if (ch >= st.resps.size()) throw std::invalid_argument("P2: challenge out of range");
  SigmaResponse r;
  r.resp = st.resps[ch];
  r.u = st.openings[ch];
  return r;
}

int sigma_verify(std::uint64_t s, const SigmaCommitment& com_star, std::uint32_t ch,
                 const SigmaResponse& resp_star, const world::OracleWorld& world) {
  const auto& p = world.params();
  if (s != world.s0()) return 0;
  if (ch >= p.n_ch() || com_star.c.size() != p.n_ch()) return 0;
  if (world.oracle_V(com_star.com, p.pack_x(ch, resp_star.resp)) != 1) return 0;
  return commit::verify(com_star.c[ch], resp_to_msg(resp_star.resp, p.l_resp), resp_star.u, world);
}

std::optional<std::uint64_t> sigma_extract(std::uint64_t s, const SigmaCommitment& com_star,
                                           std::uint32_t ch, const SigmaResponse& resp_star,
                                           std::uint32_t ch2, const SigmaResponse& resp_star2,
                                           const world::OracleWorld& world) {
  (void)s;
  return world.oracle_E(com_star.com, ch, resp_star.resp, ch2, resp_star2.resp);
}

SigmaTranscript sigma_simulate(std::uint64_t s, const world::OracleWorld& world,
                               sim::RandomSource& rng) {
  (void)s;
  const auto& p = world.params();
  const std::uint64_t z = rng.uniform_below(1ull << p.l_rand());
  const auto [com, x] = world.oracle_S(z);
  SigmaTranscript t;
  t.com_star.com = com;
  t.ch = p.ch_of(x);
  t.resp_star.resp = p.resp_of(x);
  for (std::uint32_t c = 0; c < p.n_ch(); ++c) {
    const auto msg = c == t.ch ? resp_to_msg(t.resp_star.resp, p.l_resp)
                               : std::vector<std::uint8_t>(p.l_resp, 0);
    auto [cc, uu] = commit::commit(msg, world, rng);
    t.com_star.c.push_back(std::move(cc));
    if (c == t.ch) t.resp_star.u = std::move(uu);
  }
  return t;
}

double sigma_hvzk_triple_sd(const world::OracleWorld& world) {
  const auto& p = world.params();
  if (p.l_rand() > 12) throw std::invalid_argument("hvzk sd: enumeration beyond budget");
  const std::size_t M = p.M(), C = p.n_ch(), R = p.n_resp();
  const std::size_t Z = 1ull << p.l_rand();
  // support: (com, ch, resp) with resp == R standing for bot
  std::vector<double> real(M * C * (R + 1), 0.0), simu(M * C * (R + 1), 0.0);
  const double wr = 1.0 / double(M * C * Z);
  for (std::uint32_t com = 0; com < M; ++com)
    for (std::uint32_t ch = 0; ch < C; ++ch)
      for (std::uint64_t z = 0; z < Z; ++z) {
        const auto ans = world.oracle_P(world.w0(), com, ch, z);
        const std::size_t resp_idx = ans.kind == world::OpAnswer::Kind::Resp ? ans.resp : R;
        real[(com * C + ch) * (R + 1) + resp_idx] += wr;
      }
  const double ws = 1.0 / double(Z);
  for (std::uint64_t z = 0; z < Z; ++z) {
    const auto [com, x] = world.oracle_S(z);
    simu[(com * C + p.ch_of(x)) * (R + 1) + p.resp_of(x)] += ws;
  }
  double sd = 0.0;
  for (std::size_t i = 0; i < real.size(); ++i) sd += std::fabs(real[i] - simu[i]);
  return 0.5 * sd;
}

double sigma_hvzk_bound(const world::WorldParams& p) {
  const double k = double(p.k());
  const double eps1 = 0.5 * std::sqrt(double(p.n_resp()) / double(1ull << p.l_rand()));
  const double eps2 =
      2.0 * k * k / double(p.N()) + std::sqrt(double(p.n_ch())) / (2.0 * std::sqrt(k));
  const double eps3 = std::sqrt(double(p.M()) * k / double(1ull << p.l_rand()));
  return eps1 + eps2 + eps3;
}

double completeness_fraction_exact(const world::OracleWorld& world) {
  const auto& p = world.params();
  const auto& inst = world.instance();
  std::size_t nonempty = 0;
  for (std::uint32_t com = 0; com < p.M(); ++com) {
    std::vector<std::uint8_t> seen(p.n_ch(), 0);
    for (auto x : inst.set_of(com)) seen[p.ch_of(x)] = 1;
    for (std::uint32_t ch = 0; ch < p.n_ch(); ++ch) nonempty += seen[ch];
  }
  return double(nonempty) / double(p.M() * p.n_ch());
}

double completeness_fraction_expected(const world::WorldParams& p) {
  // P[slice nonempty] = 1 - prod_{i<k} (N - R - i) / (N - i)
  double prob_empty = 1.0;
  const double N = double(p.N()), R = double(p.n_resp());
  for (std::uint64_t i = 0; i < p.k(); ++i) prob_empty *= (N - R - double(i)) / (N - double(i));
  return 1.0 - prob_empty;
}

double completeness_lower_bound(const world::WorldParams& p) {
  return 1.0 - std::exp(-double(1ull << (p.l_resp / 3)));
}

RandomOracle::RandomOracle(unsigned out_bits, std::uint64_t seed) : bits_(out_bits), rng_(seed) {
  if (out_bits > 63) throw std::invalid_argument("random oracle: output beyond 63 bits");
}

std::uint64_t RandomOracle::query(const std::vector<std::uint8_t>& input) {
  if (bits_ == 0) return 0;
  std::string key(input.begin(), input.end());
  std::lock_guard<std::mutex> lock(mu_);
  auto it = table_.find(key);
  if (it == table_.end()) it = table_.emplace(std::move(key), rng_.uniform_below(1ull << bits_)).first;
  return it->second;
}

std::size_t RandomOracle::table_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return table_.size();
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t((v >> (8 * i)) & 0xff));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t((v >> (8 * i)) & 0xff));
}

static void put_field(std::vector<std::uint8_t>& out, const std::vector<std::uint8_t>& bytes) {
  put_u32(out, std::uint32_t(bytes.size()));
  out.insert(out.end(), bytes.begin(), bytes.end());
}

std::vector<std::uint8_t> serialize(const commit::Commitment& c) {
  std::vector<std::uint8_t> out;
  put_u32(out, std::uint32_t(c.size()));
  for (auto p : c.positions) put_u32(out, p);
  for (auto y : c.anchors) put_u32(out, y);
  for (auto b : c.masks) out.push_back(b);
  return out;
}

std::vector<std::uint8_t> serialize(const SigmaCommitment& cs) {
  std::vector<std::uint8_t> out;
  put_u32(out, cs.com);
  put_u32(out, std::uint32_t(cs.c.size()));
  for (const auto& c : cs.c) put_field(out, serialize(c));
  return out;
}

std::vector<std::uint8_t> serialize(const SigmaResponse& rs) {
  std::vector<std::uint8_t> out;
  put_u32(out, rs.resp);
  put_u32(out, std::uint32_t(rs.u.xs.size()));
  for (auto x : rs.u.xs) put_u32(out, x);
  return out;
}

static nlohmann::ordered_json commitment_json(const commit::Commitment& c) {
  return {{"positions", c.positions}, {"anchors", c.anchors}, {"masks", c.masks}};
}

nlohmann::ordered_json to_json(const SigmaTranscript& t) {
  nlohmann::ordered_json j;
  j["schema"] = "qpick-transcript/1";
  j["com"] = t.com_star.com;
  j["c"] = nlohmann::ordered_json::array();
  for (const auto& c : t.com_star.c) j["c"].push_back(commitment_json(c));
  j["ch"] = t.ch;
  j["resp"] = t.resp_star.resp;
  j["u"] = t.resp_star.u.xs;
  return j;
}

// ---- Fiat-Shamir ----

std::vector<std::uint32_t> fs_challenges(std::uint64_t s, const std::vector<SigmaCommitment>& coms,
                                         unsigned r, RandomOracle& H, const world::WorldParams& p) {
  std::vector<std::uint8_t> input;
  input.push_back('F');
  input.push_back('S');
  put_u64(input, s);
  for (const auto& cs : coms) {
    auto ser = serialize(cs);
    put_u32(input, std::uint32_t(ser.size()));
    input.insert(input.end(), ser.begin(), ser.end());
  }
  const std::uint64_t h = H.query(input);
  std::vector<std::uint32_t> chs(r);
  for (unsigned i = 0; i < r; ++i) chs[i] = std::uint32_t((h >> (i * p.l_ch)) & (p.n_ch() - 1));
  return chs;
}

FSProof fs_prove(std::uint64_t s, std::uint64_t w, unsigned r, RandomOracle& H,
                 const world::OracleWorld& world, sim::RandomSource& rng) {
  FSProof proof;
  std::vector<ProverState> states;
  for (unsigned i = 0; i < r; ++i) {
    auto [cs, st] = sigma_prove_P1(s, w, world, rng);
    proof.coms.push_back(std::move(cs));
    states.push_back(std::move(st));
  }
  const auto chs = fs_challenges(s, proof.coms, r, H, world.params());
  for (unsigned i = 0; i < r; ++i) proof.resps.push_back(sigma_prove_P2(chs[i], states[i]));
  return proof;
}

int fs_verify(std::uint64_t s, const FSProof& proof, RandomOracle& H,
              const world::OracleWorld& world) {
  if (proof.coms.size() != proof.resps.size() || proof.coms.empty()) return 0;
  const auto chs = fs_challenges(s, proof.coms, unsigned(proof.coms.size()), H, world.params());
  for (std::size_t i = 0; i < proof.coms.size(); ++i)
    if (sigma_verify(s, proof.coms[i], chs[i], proof.resps[i], world) != 1) return 0;
  return 1;
}

nlohmann::ordered_json to_json(const FSProof& p) {
  nlohmann::ordered_json j;
  j["schema"] = "qpick-fs-proof/1";
  j["coms"] = nlohmann::ordered_json::array();
  for (const auto& cs : p.coms) {
    nlohmann::ordered_json jc;
    jc["com"] = cs.com;
    jc["c"] = nlohmann::ordered_json::array();
    for (const auto& c : cs.c) jc["c"].push_back(commitment_json(c));
    j["coms"].push_back(std::move(jc));
  }
  j["resps"] = nlohmann::ordered_json::array();
  for (const auto& rs : p.resps) j["resps"].push_back({{"resp", rs.resp}, {"u", rs.u.xs}});
  return j;
}

// ---- Fischlin ----

void FischlinParams::validate(const world::WorldParams& p) const {
  if (!(b <= t && t <= p.l_ch)) throw std::invalid_argument("fischlin: need b <= t <= l_ch");
  if (r < 1) throw std::invalid_argument("fischlin: r >= 1");
}

std::uint64_t fischlin_hash(RandomOracle& H, std::uint64_t s,
                            const std::vector<SigmaCommitment>& coms, unsigned i, std::uint32_t ch,
                            const SigmaResponse& resp_star) {
  std::vector<std::uint8_t> input;
  input.push_back('F');
  input.push_back('I');
  put_u64(input, s);
  for (const auto& cs : coms) {
    auto ser = serialize(cs);
    put_u32(input, std::uint32_t(ser.size()));
    input.insert(input.end(), ser.begin(), ser.end());
  }
  put_u32(input, i);
  put_u32(input, ch);
  auto ser = serialize(resp_star);
  put_u32(input, std::uint32_t(ser.size()));
  input.insert(input.end(), ser.begin(), ser.end());
  return H.query(input);
}

int fischlin_verify(std::uint64_t s, const FischlinProof& proof, const FischlinParams& fp,
                    RandomOracle& H, const world::OracleWorld& world) {
  fp.validate(world.params());
  if (proof.coms.size() != fp.r || proof.chs.size() != fp.r || proof.resps.size() != fp.r) return 0;
  std::uint64_t sum = 0;
  for (unsigned i = 0; i < fp.r; ++i) {
    if (sigma_verify(s, proof.coms[i], proof.chs[i], proof.resps[i], world) != 1) return 0;
    sum += fischlin_hash(H, s, proof.coms, i, proof.chs[i], proof.resps[i]);
  }
  return sum <= fp.S ? 1 : 0;
}

nlohmann::ordered_json to_json(const FischlinProof& p) {
  nlohmann::ordered_json j;
  j["schema"] = "qpick-fischlin-proof/1";
  j["coms"] = nlohmann::ordered_json::array();
  for (const auto& cs : p.coms) {
    nlohmann::ordered_json jc;
    jc["com"] = cs.com;
    jc["c"] = nlohmann::ordered_json::array();
    for (const auto& c : cs.c) jc["c"].push_back(commitment_json(c));
    j["coms"].push_back(std::move(jc));
  }
  j["chs"] = p.chs;
  j["resps"] = nlohmann::ordered_json::array();
  for (const auto& rs : p.resps) j["resps"].push_back({{"resp", rs.resp}, {"u", rs.u.xs}});
  return j;
}

// ---- attacks ----

namespace {

// Fake com* assembled from one E1 outcome plus blind per-challenge
// commitments; carries everything A3 needs to answer one challenge.
struct FakeCommitment {
  SigmaCommitment com_star;
  sim::AmplitudeVector psi;                  // |Psi(com)> for the response search
  std::vector<commit::B1State> slots;        // one B1 state per challenge value
};

FakeCommitment sigma_attack_A2(const world::AttackOracles& oracles, sim::RandomSource& rng) {
  const auto& p = oracles.params();
  FakeCommitment f;
  auto e1 = pickone::E1(oracles.make_sigma_psi(), rng);
  f.com_star.com = e1.y;
  f.psi = std::move(e1.psi);
  for (std::uint32_t ch = 0; ch < p.n_ch(); ++ch) {
    auto b1 = commit::attack_B1(p.l_resp, oracles, rng);
    f.com_star.c.push_back(b1.c);
    f.slots.push_back(std::move(b1));
  }
  return f;
}

std::vector<std::uint8_t> challenge_predicate(const world::WorldParams& p, std::uint32_t ch) {
  std::vector<std::uint8_t> mask(p.N());
  for (std::uint64_t x = 0; x < p.N(); ++x) mask[x] = p.ch_of(std::uint32_t(x)) == ch ? 1 : 0;
  return mask;
}

SigmaResponse sigma_attack_A3(FakeCommitment& f, std::uint32_t ch,
                              const world::AttackOracles& oracles, sim::RandomSource& rng,
                              bool& search_ok) {
  const auto& p = oracles.params();
  pickone::PickOneConfig cfg{p.l_com, 1.0 / double(2 * p.n_ch())};
  auto pred = challenge_predicate(p, ch);
  auto r = pickone::E2(cfg, oracles, f.com_star.com, std::move(f.psi), pred, rng);
  f.psi = std::move(r.residual);
  SigmaResponse resp_star;
  search_ok = r.success;
  if (!r.success) return resp_star;
  resp_star.resp = p.resp_of(r.x);
  // open the challenged blind commitment to the found response
  auto b2 = commit::attack_B2(resp_to_msg(resp_star.resp, p.l_resp), f.slots[ch], oracles, rng);
  search_ok = b2.all_ok;
  resp_star.u = std::move(b2.u);
  return resp_star;
}

// Exact acceptance probability of one sigma-attack run, conditional on
// the realized world, B1 states and challenge: the response search must
// land on some x, and the per-bit openings for that x's response bits
// must all succeed.
double sigma_attack_exact(const FakeCommitment& f, std::uint32_t ch,
                          const world::OracleWorld& world) {
  const auto& p = world.params();
  const auto& inst = world.instance();
  pickone::PickOneConfig resp_cfg{p.l_com, 1.0 / double(2 * p.n_ch())};
  auto pred = challenge_predicate(p, ch);
  const double p_search = pickone::E2_exact_success(resp_cfg, inst, f.com_star.com, pred);
  std::vector<std::uint32_t> hits;
  for (auto x : inst.set_of(f.com_star.com))
    if (pred[x]) hits.push_back(p.resp_of(x));
  if (hits.empty()) return 0.0;

  // per-bit opening probabilities depend only on the target bit value
  const auto& slot = f.slots[ch];
  pickone::PickOneConfig bit_cfg{p.l_com, 1.0 / 3.0};
  std::vector<std::array<double, 2>> bit_prob(p.l_resp);
  for (unsigned i = 0; i < p.l_resp; ++i)
    for (unsigned target = 0; target < 2; ++target) {
      auto bp = commit::bit_predicate(p, slot.c.positions[i], target);
      bit_prob[i][target] =
          pickone::E2_exact_success(bit_cfg, inst, slot.c.anchors[i], bp);
    }
  double open_given_resp = 0.0;
  for (auto resp : hits) {
    double prod = 1.0;
    for (unsigned i = 0; i < p.l_resp; ++i) {
      const unsigned want = (slot.c.masks[i] ^ ((resp >> i) & 1)) & 1;
      prod *= bit_prob[i][want];
    }
    open_given_resp += prod / double(hits.size());
  }
  return p_search * open_given_resp;
}

}  // namespace

SigmaRunOutcome sigma_attack_run(const world::AttackOracles& oracles,
                                 const world::OracleWorld& world, sim::RandomSource& rng,
                                 bool with_exact) {
  auto fake = sigma_attack_A2(oracles, rng);
  const auto ch = std::uint32_t(rng.uniform_below(world.params().n_ch()));
  SigmaRunOutcome out;
  if (with_exact) out.exact_prob = sigma_attack_exact(fake, ch, world);
  bool ok = false;
  auto resp_star = sigma_attack_A3(fake, ch, oracles, rng, ok);
  out.accepted = ok && sigma_verify(world.s0(), fake.com_star, ch, resp_star, world) == 1;
  return out;
}

bool naive_extractor_run(const world::ExtractorOracles& oracles, sim::RandomSource& rng) {
  const auto& p = oracles.params();
  auto sample = oracles.sample_S(rng);
  if (!sample) return false;
  const auto [y, x1] = *sample;
  const auto x2 = std::uint32_t(rng.uniform_below(p.N()));
  if (x2 == x1) return false;
  auto ans = oracles.oracle_E(y, p.ch_of(x1), p.resp_of(x1), p.ch_of(x2), p.resp_of(x2));
  if (!ans || !*ans) return false;
  return oracles.oracle_R(oracles.s0(), **ans) == 1;
}

AttackReport total_break_metrics(const std::string& scheme, const std::string& break_class,
                                 const std::vector<std::uint8_t>& adversary_outcomes,
                                 const std::vector<std::uint8_t>& extractor_outcomes,
                                 const std::vector<double>& exact_probs,
                                 nlohmann::ordered_json params) {
  AttackReport rep;
  rep.scheme = scheme;
  rep.break_class = break_class;
  rep.trials = adversary_outcomes.size();
  for (auto b : adversary_outcomes) rep.adversary_successes += b;
  for (auto b : extractor_outcomes) rep.extractor_successes += b;
  rep.adversary_rate = rep.trials ? double(rep.adversary_successes) / double(rep.trials) : 0.0;
  rep.extractor_rate = extractor_outcomes.empty()
                           ? 0.0
                           : double(rep.extractor_successes) / double(extractor_outcomes.size());
  rep.adversary_interval = stats::wilson(rep.adversary_successes, rep.trials);
  rep.extractor_interval = stats::wilson(rep.extractor_successes, extractor_outcomes.size());
  double sum = 0.0, var = 0.0;
  for (double p : exact_probs) {
    sum += p;
    var += p * (1.0 - p);
  }
  rep.exact_mean = exact_probs.empty() ? 0.0 : sum / double(exact_probs.size());
  rep.exact_sigma = exact_probs.empty() ? 0.0 : std::sqrt(var) / double(exact_probs.size());
  rep.params = std::move(params);
  return rep;
}

namespace {

nlohmann::ordered_json harness_params_json(const HarnessConfig& cfg) {
  return {{"l_com", cfg.wp.l_com},
          {"l_ch", cfg.wp.l_ch},
          {"l_resp", cfg.wp.l_resp},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"variant",
           cfg.variant == RelationVariant::Statistical ? "statistical" : "computational"}};
}

const char* break_class_name(RelationVariant v) {
  return v == RelationVariant::Statistical ? "total knowledge break" : "total break";
}

// Trial-parallel driver: each trial owns a fresh world derived from the
// master seed, so reports are independent of the worker count.
template <typename Fn>
void run_trials(std::size_t trials, unsigned workers, std::uint64_t seed, Fn&& fn) {
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) fn(t, seed);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned wkr = 0; wkr < workers; ++wkr)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= trials) return;
        fn(t, seed);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace

AttackReport run_sigma_attack(const HarnessConfig& cfg) {
  std::vector<std::uint8_t> adv(cfg.trials, 0), ext(cfg.trials, 0);
  std::vector<double> exact(cfg.trials, 0.0);
  run_trials(cfg.trials, cfg.workers, cfg.seed, [&](std::size_t t, std::uint64_t seed) {
    sim::RandomSource rng = sim::RandomSource(seed).fork(t);
    world::OracleWorld w(cfg.wp, rng.next_u64());
    world::AttackOracles attack(w);
    auto run = sigma_attack_run(attack, w, rng, /*with_exact=*/true);
    adv[t] = run.accepted ? 1 : 0;
    exact[t] = run.exact_prob;
    world::ExtractorOracles extractor(w, cfg.extractor_q_S, cfg.extractor_q_V, cfg.extractor_q_E);
    ext[t] = naive_extractor_run(extractor, rng) ? 1 : 0;
  });
  return total_break_metrics("sigma", break_class_name(cfg.variant), adv, ext, exact,
                             harness_params_json(cfg));
}

FSRunOutcome fs_attack_run(unsigned r, RandomOracle& H, const world::AttackOracles& oracles,
                           const world::OracleWorld& world, sim::RandomSource& rng,
                           bool with_exact) {
  std::vector<FakeCommitment> fakes;
  std::vector<SigmaCommitment> coms;
  for (unsigned i = 0; i < r; ++i) {
    fakes.push_back(sigma_attack_A2(oracles, rng));
    coms.push_back(fakes.back().com_star);
  }
  const auto chs = fs_challenges(world.s0(), coms, r, H, world.params());
  FSRunOutcome out;
  if (with_exact) {
    out.exact_prob = 1.0;
    for (unsigned i = 0; i < r; ++i) out.exact_prob *= sigma_attack_exact(fakes[i], chs[i], world);
  }
  FSProof proof;
  proof.coms = std::move(coms);
  bool all_ok = true;
  for (unsigned i = 0; i < r; ++i) {
    bool ok = false;
    proof.resps.push_back(sigma_attack_A3(fakes[i], chs[i], oracles, rng, ok));
    all_ok = all_ok && ok;
  }
  out.accepted = all_ok && fs_verify(world.s0(), proof, H, world) == 1;
  return out;
}

AttackReport run_fs_attack(const HarnessConfig& cfg, unsigned r) {
  std::vector<std::uint8_t> adv(cfg.trials, 0), ext(cfg.trials, 0);
  std::vector<double> exact(cfg.trials, 0.0);
  run_trials(cfg.trials, cfg.workers, cfg.seed, [&](std::size_t t, std::uint64_t seed) {
    sim::RandomSource rng = sim::RandomSource(seed).fork(t);
    world::OracleWorld w(cfg.wp, rng.next_u64());
    RandomOracle H(r * cfg.wp.l_ch, rng.next_u64());
    world::AttackOracles attack(w);
    auto run = fs_attack_run(r, H, attack, w, rng, /*with_exact=*/true);
    adv[t] = run.accepted ? 1 : 0;
    exact[t] = run.exact_prob;
    world::ExtractorOracles extractor(w, cfg.extractor_q_S, cfg.extractor_q_V, cfg.extractor_q_E);
    ext[t] = naive_extractor_run(extractor, rng) ? 1 : 0;
  });
  auto params = harness_params_json(cfg);
  params["r"] = r;
  return total_break_metrics("fiat-shamir", break_class_name(cfg.variant), adv, ext, exact,
                             std::move(params));
}

FischlinRunOutcome fischlin_attack_run(const FischlinParams& fp, RandomOracle& H,
                                       const world::AttackOracles& oracles,
                                       const world::OracleWorld& world, sim::RandomSource& rng,
                                       bool with_exact) {
  const auto& p = world.params();
  fp.validate(p);
  // fix all com*_i first: the hash predicate sees the full list
  std::vector<sim::AmplitudeVector> psis;
  FischlinProof proof;
  for (unsigned i = 0; i < fp.r; ++i) {
    auto e1 = pickone::E1(oracles.make_sigma_psi(), rng);
    SigmaCommitment cs;
    cs.com = e1.y;
    for (std::uint32_t ch = 0; ch < p.n_ch(); ++ch) cs.c.push_back(commit::comstar(e1.y, p));
    proof.coms.push_back(std::move(cs));
    psis.push_back(std::move(e1.psi));
  }

  pickone::PickOneConfig cfg{p.l_com, 1.0 / double(2ull << fp.b)};
  FischlinRunOutcome out;
  out.p_s_exact_tail = 1.0;
  bool all_ok = true;
  if (with_exact) out.exact_prob = 1.0;
  for (unsigned i = 0; i < fp.r; ++i) {
    // P_i(ch', resp') = 1 iff H(s, (com*_j)_j, i, ch', (resp', open*)) == 0
    std::vector<std::uint8_t> pred(p.N());
    std::size_t ones = 0;
    for (std::uint64_t xi = 0; xi < p.N(); ++xi) {
      const auto x = std::uint32_t(xi);
      SigmaResponse rs;
      rs.resp = p.resp_of(x);
      rs.u = commit::comopenstar(p.ch_of(x), p.resp_of(x), p);
      pred[xi] = fischlin_hash(H, world.s0(), proof.coms, i, p.ch_of(x), rs) == 0 ? 1 : 0;
      ones += pred[xi];
    }
    if (with_exact) {
      out.exact_prob *=
          pickone::E2_exact_success(cfg, world.instance(), proof.coms[i].com, pred);
      const auto lo = std::uint64_t(std::ceil(cfg.delta_min * double(p.k())));
      out.p_s_exact_tail -= std::pow(2.0, -double(p.l_com)) +
                            stats::hypergeom_tail_below(p.N(), ones, p.k(), lo);
    }
    auto r2 = pickone::E2(cfg, oracles, proof.coms[i].com, std::move(psis[i]), pred, rng);
    all_ok = all_ok && r2.success;
    const auto ch = r2.success ? p.ch_of(r2.x) : 0;
    const auto resp = r2.success ? p.resp_of(r2.x) : 0;
    proof.chs.push_back(ch);
    SigmaResponse rs;
    rs.resp = resp;
    rs.u = commit::comopenstar(ch, resp, p);
    proof.resps.push_back(std::move(rs));
  }
  out.accepted = all_ok && fischlin_verify(world.s0(), proof, fp, H, world) == 1;
  if (out.accepted) {
    std::uint64_t sum = 0;
    for (unsigned i = 0; i < fp.r; ++i)
      sum += fischlin_hash(H, world.s0(), proof.coms, i, proof.chs[i], proof.resps[i]);
    out.hash_sum_zero = sum == 0;
  }
  if (out.p_s_exact_tail < 0.0) out.p_s_exact_tail = 0.0;
  return out;
}

AttackReport run_fischlin_attack(const HarnessConfig& cfg, const FischlinParams& fp) {
  std::vector<std::uint8_t> adv(cfg.trials, 0), ext(cfg.trials, 0);
  std::vector<double> exact(cfg.trials, 0.0);
  std::vector<double> ps(cfg.trials, 0.0);
  std::vector<std::uint8_t> sum_zero(cfg.trials, 1);
  run_trials(cfg.trials, cfg.workers, cfg.seed, [&](std::size_t t, std::uint64_t seed) {
    sim::RandomSource rng = sim::RandomSource(seed).fork(t);
    world::OracleWorld w(cfg.wp, rng.next_u64());
    RandomOracle H(fp.b, rng.next_u64());
    world::AttackOracles attack(w);
    auto run = fischlin_attack_run(fp, H, attack, w, rng, /*with_exact=*/true);
    adv[t] = run.accepted ? 1 : 0;
    exact[t] = run.exact_prob;
    ps[t] = run.p_s_exact_tail;
    sum_zero[t] = run.accepted ? (run.hash_sum_zero ? 1 : 0) : 1;
    world::ExtractorOracles extractor(w, cfg.extractor_q_S, cfg.extractor_q_V, cfg.extractor_q_E);
    ext[t] = naive_extractor_run(extractor, rng) ? 1 : 0;
  });
  auto params = harness_params_json(cfg);
  params["b"] = fp.b;
  params["r"] = fp.r;
  params["S"] = fp.S;
  params["t"] = fp.t;
  bool all_zero = true;
  for (auto z : sum_zero) all_zero = all_zero && z;
  params["accepted_hash_sums_zero"] = all_zero;
  auto rep = total_break_metrics("fischlin", break_class_name(cfg.variant), adv, ext, exact,
                                 std::move(params));
  double s = 0.0;
  for (double v : ps) s += v;
  rep.aux_bound = cfg.trials ? s / double(cfg.trials) : 0.0;
  return rep;
}

}  // namespace qpick::proto
