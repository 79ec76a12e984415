#include "qpick/oracle_world.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qpick::world {

void TwoValuesParams::validate() const {
  if (M < 1 || N < 1) throw std::invalid_argument("two-values params: empty sets");
  if (k < 1 || k > N) throw std::invalid_argument("two-values params: need 1 <= k <= N");
}

bool TwoValuesInstance::contains(std::uint32_t y, std::uint32_t x) const {
  const auto& s = sets.at(y);
  return std::binary_search(s.begin(), s.end(), x);
}

TwoValuesInstance sample_instance(const TwoValuesParams& params, sim::RandomSource& rng) {
  params.validate();
  TwoValuesInstance inst;
  inst.params = params;
  inst.sets.resize(params.M);
  std::vector<std::uint32_t> pool(params.N);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::size_t y = 0; y < params.M; ++y) {
    // partial Fisher-Yates: first k entries are a uniform k-subset
    for (std::size_t i = 0; i < params.k; ++i) {
      const std::size_t j = i + std::size_t(rng.uniform_below(params.N - i));
      std::swap(pool[i], pool[j]);
    }
    inst.sets[y].assign(pool.begin(), pool.begin() + params.k);
    std::sort(inst.sets[y].begin(), inst.sets[y].end());
  }
  return inst;
}

sim::AmplitudeVector psi_y(const TwoValuesInstance& inst, std::uint32_t y) {
  if (y >= inst.params.M) throw std::invalid_argument("psi_y: y out of range");
  auto v = sim::AmplitudeVector::zero({inst.params.N});
  const double a = 1.0 / std::sqrt(double(inst.params.k));
  for (auto x : inst.sets[y]) v.amps[x] = a;
  return v;
}

sim::AmplitudeVector sigma_psi(const TwoValuesInstance& inst) {
  auto v = sim::AmplitudeVector::zero({inst.params.M, inst.params.N});
  const double a = 1.0 / std::sqrt(double(inst.params.k) * double(inst.params.M));
  for (std::size_t y = 0; y < inst.params.M; ++y)
    for (auto x : inst.sets[y]) v.amps[y * inst.params.N + x] = a;
  return v;
}

sim::AmplitudeVector sigma_phi(const TwoValuesParams& params) {
  return sim::AmplitudeVector::uniform({params.M, params.N});
}

sim::AmplitudeVector sigma_psi_ext(const TwoValuesInstance& inst) {
  auto flat = sigma_psi(inst);
  auto v = sim::AmplitudeVector::zero({inst.params.M * inst.params.N + 1});
  std::copy(flat.amps.begin(), flat.amps.end(), v.amps.begin());
  return v;
}

sim::AmplitudeVector bot_state(const TwoValuesParams& params) {
  return sim::AmplitudeVector::basis({params.M * params.N + 1}, params.M * params.N);
}

static void check_yx_shape(const TwoValuesInstance& inst, const sim::AmplitudeVector& state,
                           bool with_bit) {
  const std::size_t want = with_bit ? 3 : 2;
  if (state.dims.size() != want || state.dims[0] != inst.params.M || state.dims[1] != inst.params.N ||
      (with_bit && state.dims[2] != 2))
    throw std::invalid_argument("oracle applier: register shape mismatch");
}

sim::AmplitudeVector apply_O_V_xor(const TwoValuesInstance& inst, const sim::AmplitudeVector& state) {
  check_yx_shape(inst, state, true);
  sim::AmplitudeVector out = state;
  const std::size_t N = inst.params.N;
  for (std::size_t y = 0; y < inst.params.M; ++y)
    for (auto x : inst.sets[y]) std::swap(out.amps[(y * N + x) * 2], out.amps[(y * N + x) * 2 + 1]);
  return out;
}

sim::AmplitudeVector apply_O_V_phase(const TwoValuesInstance& inst,
                                     const sim::AmplitudeVector& state) {
  check_yx_shape(inst, state, true);
  sim::AmplitudeVector out = state;
  const std::size_t N = inst.params.N;
  for (std::size_t y = 0; y < inst.params.M; ++y)
    for (auto x : inst.sets[y]) out.amps[(y * N + x) * 2 + 1] = -out.amps[(y * N + x) * 2 + 1];
  return out;
}

sim::AmplitudeVector apply_O_F(const TwoValuesInstance& inst, const sim::AmplitudeVector& state) {
  check_yx_shape(inst, state, false);
  sim::AmplitudeVector out = state;
  const std::size_t N = inst.params.N;
  const double a = 1.0 / std::sqrt(double(inst.params.k));
  std::vector<sim::cplx> axis(N, sim::cplx(0.0, 0.0));
  for (std::size_t y = 0; y < inst.params.M; ++y) {
    for (auto x : inst.sets[y]) axis[x] = a;
    sim::reflect_block(out.amps.data() + y * N, axis.data(), N);
    for (auto x : inst.sets[y]) axis[x] = 0.0;
  }
  return out;
}

sim::AmplitudeVector apply_O_Psi(const TwoValuesInstance& inst, const sim::AmplitudeVector& state) {
  const std::size_t D = inst.params.M * inst.params.N + 1;
  if (state.dims.size() != 1 || state.dims[0] != D)
    throw std::invalid_argument("O_Psi: expected the bot-extended register");
  const auto sp = sigma_psi_ext(inst);
  const auto bot = bot_state(inst.params);
  const sim::cplx a = sp.inner(state);
  const sim::cplx b = bot.inner(state);
  sim::AmplitudeVector out = state;
  // swap the SigmaPsi and bot components, fix the orthogonal complement
  kernels::caxpy(b - a, sp.amps.data(), out.amps.data(), D);
  kernels::caxpy(a - b, bot.amps.data(), out.amps.data(), D);
  return out;
}

void WorldParams::validate() const {
  if (l_com < 1 || l_ch < 1 || l_resp < 1) throw std::invalid_argument("world params: zero lengths");
  // budgets sized so that (com, ch, z) packs into the 64-bit memo key
  if (l_ch > 8) throw std::invalid_argument("world params: l_ch beyond desk-scale budget");
  if (l_ch + l_resp > 24) throw std::invalid_argument("world params: X beyond desk-scale budget");
  if (l_com > 16) throw std::invalid_argument("world params: Y beyond desk-scale budget");
  if (l_com + l_resp > 32) throw std::invalid_argument("world params: Z beyond desk-scale budget");
  if (k() > N()) throw std::invalid_argument("world params: k exceeds |X|");
}

OracleWorld::OracleWorld(const WorldParams& params, std::uint64_t seed)
    : params_(params), seed_(seed), w0_(0), lazy_rng_(0) {
  params_.validate();
  sim::RandomSource root(seed);
  sim::RandomSource inst_rng = root.fork(1);
  TwoValuesParams tv{params_.M(), params_.N(), params_.k()};
  instance_ = sample_instance(tv, inst_rng);
  sim::RandomSource w_rng = root.fork(2);
  w0_ = w_rng.uniform_below(1ull << params_.l_rand());
  lazy_rng_ = root.fork(3);
}

std::pair<std::uint32_t, std::uint32_t> OracleWorld::oracle_S(std::uint64_t z) const {
  if (z >= (1ull << params_.l_rand())) throw std::invalid_argument("oracle_S: z out of range");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = os_table_.find(z);
  if (it != os_table_.end()) return it->second;
  const auto y = std::uint32_t(lazy_rng_.uniform_below(params_.M()));
  const auto& s = instance_.sets[y];
  const auto x = s[lazy_rng_.uniform_below(s.size())];
  auto entry = std::make_pair(y, x);
  os_table_.emplace(z, entry);
  return entry;
}

OpAnswer OracleWorld::oracle_P(std::uint64_t w, std::uint32_t com, std::uint32_t ch,
                               std::uint64_t z) const {
  if (w != w0_) return {OpAnswer::Kind::Zero, 0};
  if (com >= params_.M() || ch >= params_.n_ch() || z >= (1ull << params_.l_rand()))
    throw std::invalid_argument("oracle_P: argument out of range");
  const std::uint64_t key = (std::uint64_t(com) << 42) | (std::uint64_t(ch) << 33) | z;
  std::lock_guard<std::mutex> lock(mu_);
  auto it = op_table_.find(key);
  if (it == op_table_.end()) {
    std::vector<std::uint32_t> resp_pool;
    for (auto x : instance_.sets[com])
      if (params_.ch_of(x) == ch) resp_pool.push_back(params_.resp_of(x));
    std::optional<std::uint32_t> ans;
    if (!resp_pool.empty()) ans = resp_pool[lazy_rng_.uniform_below(resp_pool.size())];
    it = op_table_.emplace(key, ans).first;
  }
  if (!it->second) return {OpAnswer::Kind::Bot, 0};
  return {OpAnswer::Kind::Resp, *it->second};
}

std::optional<std::uint64_t> OracleWorld::oracle_E(std::uint32_t com, std::uint32_t ch,
                                                   std::uint32_t resp, std::uint32_t ch2,
                                                   std::uint32_t resp2) const {
  if (com >= params_.M()) return std::nullopt;
  if (ch == ch2 && resp == resp2) return std::nullopt;
  const auto x1 = params_.pack_x(ch, resp);
  const auto x2 = params_.pack_x(ch2, resp2);
  if (instance_.contains(com, x1) && instance_.contains(com, x2)) return w0_;
  return std::nullopt;
}

int OracleWorld::oracle_R(std::uint64_t s, std::uint64_t w) const {
  return (s == s0() && w == w0_) ? 1 : 0;
}

int OracleWorld::oracle_V(std::uint32_t y, std::uint32_t x) const {
  if (y >= params_.M() || x >= params_.N()) return 0;
  return instance_.contains(y, x) ? 1 : 0;
}

std::size_t OracleWorld::memoized_S_entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return os_table_.size();
}

std::size_t OracleWorld::memoized_P_entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return op_table_.size();
}

nlohmann::ordered_json OracleWorld::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "qpick-world/1";
  j["params"] = {{"l_com", params_.l_com},
                 {"l_ch", params_.l_ch},
                 {"l_resp", params_.l_resp},
                 {"l_rand", params_.l_rand()},
                 {"M", params_.M()},
                 {"N", params_.N()},
                 {"k", params_.k()}};
  j["seed"] = seed_;
  j["s0"] = s0();
  j["w0"] = w0_;
  j["sets"] = instance_.sets;
  std::lock_guard<std::mutex> lock(mu_);
  nlohmann::ordered_json os = nlohmann::ordered_json::object();
  {
    std::vector<std::uint64_t> keys;
    keys.reserve(os_table_.size());
    for (auto& kv : os_table_) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (auto z : keys) {
      const auto& yx = os_table_.at(z);
      os[std::to_string(z)] = {yx.first, yx.second};
    }
  }
  j["os_table"] = std::move(os);
  nlohmann::ordered_json op = nlohmann::ordered_json::object();
  {
    std::vector<std::uint64_t> keys;
    keys.reserve(op_table_.size());
    for (auto& kv : op_table_) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (auto key : keys) {
      const auto& ans = op_table_.at(key);
      auto& slot = op[std::to_string(key >> 42) + "," + std::to_string((key >> 33) & 0x1ff) + "," +
                      std::to_string(key & 0x1ffffffffull)];
      if (ans)
        slot = *ans;
      else
        slot = nullptr;
    }
  }
  j["op_table"] = std::move(op);
  return j;
}

sim::AmplitudeVector AttackOracles::make_sigma_psi() const { return sigma_psi(w_.instance()); }

sim::AmplitudeVector AttackOracles::apply_O_F_at(std::uint32_t y,
                                                 const sim::AmplitudeVector& x_state) const {
  if (x_state.dims.size() != 1 || x_state.dims[0] != w_.params().N())
    throw std::invalid_argument("O_F(y): expected an X-register state");
  ++of_queries_;
  sim::AmplitudeVector out = x_state;
  const auto axis = psi_y(w_.instance(), y);
  sim::reflect_block(out.amps.data(), axis.amps.data(), out.amps.size());
  return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> ExtractorOracles::sample_S(
    sim::RandomSource& rng) const {
  if (budget_S_ == 0) return std::nullopt;
  --budget_S_;
  return w_.oracle_S(rng.uniform_below(1ull << w_.params().l_rand()));
}

std::optional<int> ExtractorOracles::oracle_V(std::uint32_t y, std::uint32_t x) const {
  if (budget_V_ == 0) return std::nullopt;
  --budget_V_;
  return w_.oracle_V(y, x);
}

std::optional<std::optional<std::uint64_t>> ExtractorOracles::oracle_E(std::uint32_t com,
                                                                       std::uint32_t ch,
                                                                       std::uint32_t resp,
                                                                       std::uint32_t ch2,
                                                                       std::uint32_t resp2) const {
  if (budget_E_ == 0) return std::nullopt;
  --budget_E_;
  return w_.oracle_E(com, ch, resp, ch2, resp2);
}

}  // namespace qpick::world
