#pragma once
// Sigma-protocol built on the oracle world (honest prover through O_P,
// verifier through O_V, simulator through O_S, extractor through O_E),
// the Fiat-Shamir and Fischlin constructions on top of it, a lazily
// sampled random oracle, and the attack/extractor harnesses with
// total-break metrics.

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpick/commitments.hpp"
#include "qpick/oracle_world.hpp"
#include "qpick/stats.hpp"

namespace qpick::proto {

// com* = (com, one commitment per challenge value)
struct SigmaCommitment {
  std::uint32_t com = 0;
  std::vector<commit::Commitment> c;
};

// resp* = (resp, opening of the challenged commitment)
struct SigmaResponse {
  std::uint32_t resp = 0;
  commit::Opening u;
};

struct SigmaTranscript {
  SigmaCommitment com_star;
  std::uint32_t ch = 0;
  SigmaResponse resp_star;
};

struct ProverState {
  std::uint32_t com = 0;
  std::vector<std::uint32_t> resps;      // per challenge (0 placeholder when O_P gave bot)
  std::vector<std::uint8_t> have_resp;   // O_P returned a usable response
  std::vector<commit::Opening> openings;
};

std::vector<std::uint8_t> resp_to_msg(std::uint32_t resp, unsigned l_resp);

std::pair<SigmaCommitment, ProverState> sigma_prove_P1(std::uint64_t s, std::uint64_t w,
                                                       const world::OracleWorld& world,
                                                       sim::RandomSource& rng);
SigmaResponse sigma_prove_P2(std::uint32_t ch, const ProverState& st);

int sigma_verify(std::uint64_t s, const SigmaCommitment& com_star, std::uint32_t ch,
                 const SigmaResponse& resp_star, const world::OracleWorld& world);

// O_E on the inner conversation pair; nullopt when O_E returns zero.
std::optional<std::uint64_t> sigma_extract(std::uint64_t s, const SigmaCommitment& com_star,
                                           std::uint32_t ch, const SigmaResponse& resp_star,
                                           std::uint32_t ch2, const SigmaResponse& resp_star2,
                                           const world::OracleWorld& world);

SigmaTranscript sigma_simulate(std::uint64_t s, const world::OracleWorld& world,
                               sim::RandomSource& rng);

// Exact statistical distance between the real and simulated
// (com, ch, resp) triples for one realized world, by exhaustive
// enumeration of (com, ch, z). Budgeted to tiny parameters.
double sigma_hvzk_triple_sd(const world::OracleWorld& world);
// epsilon_1 + epsilon_2 + epsilon_3 from the simulator analysis.
double sigma_hvzk_bound(const world::WorldParams& p);

// Exact fraction of (com, ch) pairs with a nonempty response slice for a
// realized world, and its expectation over instances in closed form.
double completeness_fraction_exact(const world::OracleWorld& world);
double completeness_fraction_expected(const world::WorldParams& p);
// 1 - e^{-2^{floor(l_resp/3)}} lower bound from the security analysis.
double completeness_lower_bound(const world::WorldParams& p);

class RandomOracle {
 public:
  RandomOracle(unsigned out_bits, std::uint64_t seed);
  std::uint64_t query(const std::vector<std::uint8_t>& input);
  unsigned out_bits() const { return bits_; }
  std::size_t table_size() const;

 private:
  unsigned bits_;
  mutable std::mutex mu_;
  sim::RandomSource rng_;
  std::unordered_map<std::string, std::uint64_t> table_;
};

// length-prefixed canonical serialization used for hash inputs
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v);
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v);
std::vector<std::uint8_t> serialize(const commit::Commitment& c);
std::vector<std::uint8_t> serialize(const SigmaCommitment& cs);
std::vector<std::uint8_t> serialize(const SigmaResponse& rs);

nlohmann::ordered_json to_json(const SigmaTranscript& t);

// ---- Fiat-Shamir ----

struct FSProof {
  std::vector<SigmaCommitment> coms;
  std::vector<SigmaResponse> resps;
};

std::vector<std::uint32_t> fs_challenges(std::uint64_t s, const std::vector<SigmaCommitment>& coms,
                                         unsigned r, RandomOracle& H, const world::WorldParams& p);
FSProof fs_prove(std::uint64_t s, std::uint64_t w, unsigned r, RandomOracle& H,
                 const world::OracleWorld& world, sim::RandomSource& rng);
int fs_verify(std::uint64_t s, const FSProof& proof, RandomOracle& H,
              const world::OracleWorld& world);
nlohmann::ordered_json to_json(const FSProof& p);

// ---- Fischlin ----

struct FischlinParams {
  unsigned b = 2;      // hash output bits
  unsigned r = 3;      // repetitions
  std::uint64_t S = 0; // acceptance bound on the hash sum
  unsigned t = 2;      // challenge search bits (b <= t <= l_ch)
  void validate(const world::WorldParams& p) const;
};

struct FischlinProof {
  std::vector<SigmaCommitment> coms;
  std::vector<std::uint32_t> chs;
  std::vector<SigmaResponse> resps;
};

std::uint64_t fischlin_hash(RandomOracle& H, std::uint64_t s,
                            const std::vector<SigmaCommitment>& coms, unsigned i, std::uint32_t ch,
                            const SigmaResponse& resp_star);
// Accepts iff every transcript sigma-verifies and the hash sum is <= S.
int fischlin_verify(std::uint64_t s, const FischlinProof& proof, const FischlinParams& fp,
                    RandomOracle& H, const world::OracleWorld& world);
nlohmann::ordered_json to_json(const FischlinProof& p);

// ---- attack harnesses ----

enum class RelationVariant { Statistical, Computational };

struct AttackReport {
  std::string scheme;
  std::string break_class;
  std::size_t trials = 0;
  std::size_t adversary_successes = 0;
  double adversary_rate = 0.0;
  stats::WilsonInterval adversary_interval;
  std::size_t extractor_successes = 0;
  double extractor_rate = 0.0;
  stats::WilsonInterval extractor_interval;
  double exact_mean = 0.0;   // mean per-trial exact adversary probability
  double exact_sigma = 0.0;  // stddev of the MC success count / trials
  double aux_bound = 0.0;    // scheme-specific exact lower bound (p_s etc.)
  nlohmann::ordered_json params;
};

struct HarnessConfig {
  world::WorldParams wp;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  RelationVariant variant = RelationVariant::Statistical;
  unsigned workers = 1;
  // extractor budgets (config knobs)
  std::uint64_t extractor_q_S = 1;
  std::uint64_t extractor_q_V = 100;
  std::uint64_t extractor_q_E = 1;
};

struct SigmaRunOutcome {
  bool accepted = false;
  double exact_prob = 0.0;
};
// One interactive run of the sigma attack against a fresh verifier
// challenge; exact_prob is the branch-enumeration acceptance probability
// for this trial's world, states and challenge.
SigmaRunOutcome sigma_attack_run(const world::AttackOracles& oracles,
                                 const world::OracleWorld& world, sim::RandomSource& rng,
                                 bool with_exact);

// The documented naive extractor: one O_S-derived sample, one uniform
// second guess, one O_E query, O_R to check the candidate.
bool naive_extractor_run(const world::ExtractorOracles& oracles, sim::RandomSource& rng);

AttackReport run_sigma_attack(const HarnessConfig& cfg);

struct FSRunOutcome {
  bool accepted = false;
  double exact_prob = 0.0;
};
FSRunOutcome fs_attack_run(unsigned r, RandomOracle& H, const world::AttackOracles& oracles,
                           const world::OracleWorld& world, sim::RandomSource& rng, bool with_exact);
AttackReport run_fs_attack(const HarnessConfig& cfg, unsigned r);

struct FischlinRunOutcome {
  bool accepted = false;
  bool hash_sum_zero = false;  // for accepted proofs produced by the attack
  double exact_prob = 0.0;
  double p_s_exact_tail = 0.0;  // 1 - sum_i (2^-l_com + exact tail_i)
};
FischlinRunOutcome fischlin_attack_run(const FischlinParams& fp, RandomOracle& H,
                                       const world::AttackOracles& oracles,
                                       const world::OracleWorld& world, sim::RandomSource& rng,
                                       bool with_exact);
AttackReport run_fischlin_attack(const HarnessConfig& cfg, const FischlinParams& fp);

AttackReport total_break_metrics(const std::string& scheme, const std::string& break_class,
                                 const std::vector<std::uint8_t>& adversary_outcomes,
                                 const std::vector<std::uint8_t>& extractor_outcomes,
                                 const std::vector<double>& exact_probs,
                                 nlohmann::ordered_json params);

}  // namespace qpick::proto
