#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpick/oracle_world.hpp"
#include "qpick/stats.hpp"

using namespace qpick;
using sim::AmplitudeVector;

TEST_CASE("sample_instance basics") {
  sim::RandomSource rng(1);
  // k = N: the only subset is X itself
  auto full = world::sample_instance({3, 8, 8}, rng);
  for (std::uint32_t y = 0; y < 3; ++y)
    for (std::uint32_t x = 0; x < 8; ++x) CHECK(full.contains(y, x));

  auto inst = world::sample_instance({5, 8, 3}, rng);
  for (const auto& s : inst.sets) {
    CHECK(s.size() == 3);
    CHECK(std::is_sorted(s.begin(), s.end()));
  }
  CHECK_THROWS_AS(world::sample_instance({1, 4, 5}, rng), std::invalid_argument);
}

TEST_CASE("singleton subsets are uniform (chi-square)") {
  sim::RandomSource rng(2);
  std::vector<std::uint64_t> counts(4, 0);
  for (int t = 0; t < 10000; ++t) {
    auto inst = world::sample_instance({1, 4, 1}, rng);
    counts[inst.sets[0][0]]++;
  }
  CHECK(stats::chi2_uniform(counts).ok);
}

TEST_CASE("psi_y examples") {
  sim::RandomSource rng(3);
  auto full = world::sample_instance({1, 8, 8}, rng);
  auto u = world::psi_y(full, 0);
  for (auto a : u.amps) CHECK(a.real() == doctest::Approx(1.0 / std::sqrt(8.0)));

  world::TwoValuesInstance singleton;
  singleton.params = {1, 8, 1};
  singleton.sets = {{5}};
  auto b = world::psi_y(singleton, 0);
  CHECK(b.amps[5].real() == doctest::Approx(1.0));

  // <Psi(y) | Phi_X> = sqrt(k / N)
  auto inst = world::sample_instance({1, 16, 4}, rng);
  auto psi = world::psi_y(inst, 0);
  auto phi = AmplitudeVector::uniform({16});
  CHECK(psi.inner(phi).real() == doctest::Approx(std::sqrt(4.0 / 16.0)));
  CHECK_THROWS_AS(world::psi_y(inst, 3), std::invalid_argument);
}

TEST_CASE("sigma_psi / sigma_phi") {
  sim::RandomSource rng(4);
  auto m1 = world::sample_instance({1, 16, 4}, rng);
  auto sp = world::sigma_psi(m1);
  auto py = world::psi_y(m1, 0);
  for (std::size_t x = 0; x < 16; ++x) CHECK(sp.amps[x] == py.amps[x]);  // M = 1 product

  auto inst = world::sample_instance({4, 16, 4}, rng);
  auto s = world::sigma_psi(inst);
  auto f = world::sigma_phi(inst.params);
  CHECK(s.inner(f).real() == doctest::Approx(0.5));  // sqrt(k/N), k=4, N=16
  CHECK(s.is_normalized());
  CHECK(f.is_normalized());
}

TEST_CASE("measuring the Y register of SigmaPsi collapses to psi_y") {
  sim::RandomSource rng(5);
  auto inst = world::sample_instance({16, 32, 4}, rng);
  std::vector<std::uint64_t> counts(16, 0);
  for (int t = 0; t < 10000; ++t) {
    auto out = sim::measure_computational(world::sigma_psi(inst), 0, rng);
    counts[out.outcome]++;
    if (t == 0) {
      auto py = world::psi_y(inst, std::uint32_t(out.outcome));
      for (std::size_t x = 0; x < 32; ++x)
        CHECK(std::abs(out.post_state.amps[out.outcome * 32 + x] - py.amps[x]) <= 1e-12);
    }
  }
  CHECK(stats::chi2_uniform(counts).ok);
}

TEST_CASE("O_V classical and quantum forms") {
  sim::RandomSource rng(6);
  world::WorldParams wp{2, 2, 3};
  world::OracleWorld w(wp, 77);
  const auto& inst = w.instance();

  for (std::uint32_t y = 0; y < wp.M(); ++y)
    for (std::uint32_t x = 0; x < wp.N(); ++x)
      CHECK(w.oracle_V(y, x) == (inst.contains(y, x) ? 1 : 0));

  // phase form on |y>|Psi(y)>|1>: global -1
  auto state = AmplitudeVector::zero({wp.M(), wp.N(), 2});
  auto py = world::psi_y(inst, 1);
  for (std::size_t x = 0; x < wp.N(); ++x) state.amps[(1 * wp.N() + x) * 2 + 1] = py.amps[x];
  auto phased = world::apply_O_V_phase(inst, state);
  for (std::size_t i = 0; i < state.dim(); ++i)
    CHECK(std::abs(phased.amps[i] + state.amps[i]) <= 1e-12);

  // xor and phase forms are conjugate by a Hadamard on B
  auto rnd = AmplitudeVector::zero({wp.M(), wp.N(), 2});
  for (auto& a : rnd.amps) a = sim::cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
  rnd.normalize();
  auto h_on_b = [](const AmplitudeVector& v) {
    auto out = v;
    const double inv = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < v.dim(); i += 2) {
      out.amps[i] = (v.amps[i] + v.amps[i + 1]) * inv;
      out.amps[i + 1] = (v.amps[i] - v.amps[i + 1]) * inv;
    }
    return out;
  };
  auto lhs = h_on_b(world::apply_O_V_xor(inst, h_on_b(rnd)));
  auto rhs = world::apply_O_V_phase(inst, rnd);
  for (std::size_t i = 0; i < rnd.dim(); ++i) CHECK(std::abs(lhs.amps[i] - rhs.amps[i]) <= 1e-9);

  auto once = world::apply_O_V_xor(inst, rnd);
  CHECK(once.sqnorm() == doctest::Approx(1.0).epsilon(1e-9));
  auto twice = world::apply_O_V_xor(inst, once);
  for (std::size_t i = 0; i < rnd.dim(); ++i) CHECK(std::abs(twice.amps[i] - rnd.amps[i]) <= 1e-9);
}

TEST_CASE("O_F is the blockwise reflection") {
  sim::RandomSource rng(7);
  world::WorldParams wp{2, 2, 3};
  world::OracleWorld w(wp, 9);
  const auto& inst = w.instance();

  // defining case: |y>|Psi(y)> -> -|y>|Psi(y)>
  auto state = AmplitudeVector::zero({wp.M(), wp.N()});
  auto py = world::psi_y(inst, 2);
  for (std::size_t x = 0; x < wp.N(); ++x) state.amps[2 * wp.N() + x] = py.amps[x];
  auto r = world::apply_O_F(inst, state);
  for (std::size_t i = 0; i < state.dim(); ++i) CHECK(std::abs(r.amps[i] + state.amps[i]) <= 1e-12);

  // x outside S_y is fixed
  std::uint32_t outside = 0;
  while (inst.contains(0, outside)) ++outside;
  auto basis = AmplitudeVector::basis({wp.M(), wp.N()}, outside);
  auto rb = world::apply_O_F(inst, basis);
  for (std::size_t i = 0; i < basis.dim(); ++i) CHECK(std::abs(rb.amps[i] - basis.amps[i]) <= 1e-12);

  // SigmaPsi -> -SigmaPsi by linearity over the blocks
  auto sp = world::sigma_psi(inst);
  auto rs = world::apply_O_F(inst, sp);
  for (std::size_t i = 0; i < sp.dim(); ++i) CHECK(std::abs(rs.amps[i] + sp.amps[i]) <= 1e-9);

  auto rnd = AmplitudeVector::zero({wp.M(), wp.N()});
  for (auto& a : rnd.amps) a = sim::cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
  rnd.normalize();
  auto twice = world::apply_O_F(inst, world::apply_O_F(inst, rnd));
  for (std::size_t i = 0; i < rnd.dim(); ++i) CHECK(std::abs(twice.amps[i] - rnd.amps[i]) <= 1e-9);
}

TEST_CASE("O_Psi examples") {
  sim::RandomSource rng(9);
  world::WorldParams wp{2, 2, 3};
  world::OracleWorld w(wp, 10);
  const auto& inst = w.instance();
  const auto bot = world::bot_state(inst.params);
  const auto sp = world::sigma_psi_ext(inst);

  auto got = world::apply_O_Psi(inst, bot);
  for (std::size_t i = 0; i < got.dim(); ++i) CHECK(std::abs(got.amps[i] - sp.amps[i]) <= 1e-12);

  // symmetric combination is fixed
  auto sym = AmplitudeVector::zero(bot.dims);
  for (std::size_t i = 0; i < sym.dim(); ++i)
    sym.amps[i] = (bot.amps[i] + sp.amps[i]) / std::sqrt(2.0);
  auto fixed = world::apply_O_Psi(inst, sym);
  for (std::size_t i = 0; i < sym.dim(); ++i) CHECK(std::abs(fixed.amps[i] - sym.amps[i]) <= 1e-9);

  // orthogonal to both: a difference of two basis states inside one S_y
  const auto& set0 = inst.set_of(0);
  auto orth = AmplitudeVector::zero(bot.dims);
  orth.amps[set0[0]] = 1.0 / std::sqrt(2.0);
  orth.amps[set0[1]] = -1.0 / std::sqrt(2.0);
  CHECK(std::abs(orth.inner(sp)) <= 1e-12);
  auto kept = world::apply_O_Psi(inst, orth);
  for (std::size_t i = 0; i < orth.dim(); ++i) CHECK(std::abs(kept.amps[i] - orth.amps[i]) <= 1e-9);

  auto rnd = AmplitudeVector::zero(bot.dims);
  for (auto& a : rnd.amps) a = sim::cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
  rnd.normalize();
  auto twice = world::apply_O_Psi(inst, world::apply_O_Psi(inst, rnd));
  for (std::size_t i = 0; i < rnd.dim(); ++i) CHECK(std::abs(twice.amps[i] - rnd.amps[i]) <= 1e-9);
  CHECK(world::apply_O_Psi(inst, rnd).sqnorm() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("classical oracles of the world") {
  world::WorldParams wp{3, 2, 4};
  world::OracleWorld w(wp, 123);
  sim::RandomSource rng(11);

  CHECK(w.oracle_R(w.s0(), w.w0()) == 1);
  CHECK(w.oracle_R(w.s0(), w.w0() ^ 1) == 0);
  CHECK(w.oracle_R(1, w.w0()) == 0);

  for (int t = 0; t < 200; ++t) {
    const std::uint64_t z = rng.uniform_below(1ull << wp.l_rand());
    const auto [y, x] = w.oracle_S(z);
    CHECK(w.instance().contains(y, x));
    const auto again = w.oracle_S(z);
    CHECK(again.first == y);
    CHECK(again.second == x);
  }

  const auto& s0set = w.instance().set_of(0);
  const auto x1 = s0set[0], x2 = s0set[1];
  auto won = w.oracle_E(0, wp.ch_of(x1), wp.resp_of(x1), wp.ch_of(x2), wp.resp_of(x2));
  REQUIRE(won.has_value());
  CHECK(*won == w.w0());
  CHECK(w.oracle_R(w.s0(), *won) == 1);
  CHECK(!w.oracle_E(0, wp.ch_of(x1), wp.resp_of(x1), wp.ch_of(x1), wp.resp_of(x1)).has_value());

  // O_P: members of the slice, bot iff empty, zero for wrong witnesses
  for (std::uint32_t com = 0; com < wp.M(); ++com)
    for (std::uint32_t ch = 0; ch < wp.n_ch(); ++ch) {
      bool has = false;
      for (auto x : w.instance().set_of(com)) has = has || wp.ch_of(x) == ch;
      for (int t = 0; t < 8; ++t) {
        const std::uint64_t z = rng.uniform_below(1ull << wp.l_rand());
        const auto ans = w.oracle_P(w.w0(), com, ch, z);
        if (has) {
          REQUIRE(ans.kind == world::OpAnswer::Kind::Resp);
          CHECK(w.instance().contains(com, wp.pack_x(ch, ans.resp)));
        } else {
          CHECK(ans.kind == world::OpAnswer::Kind::Bot);
        }
        const auto again = w.oracle_P(w.w0(), com, ch, z);
        CHECK(again.kind == ans.kind);
        CHECK(again.resp == ans.resp);
      }
      CHECK(w.oracle_P(w.w0() ^ 1, com, ch, 0).kind == world::OpAnswer::Kind::Zero);
    }
}

TEST_CASE("completeness fraction bound chain") {
  world::WorldParams wp{4, 2, 6};
  const double p2 = 1.0 - std::pow(1.0 - 1.0 / double(wp.n_ch()), double(wp.k()));
  const double lower = 1.0 - std::exp(-double(1ull << (wp.l_resp / 3)));
  CHECK(p2 >= lower - 1e-12);

  double prob_empty = 1.0;
  for (std::uint64_t i = 0; i < wp.k(); ++i)
    prob_empty *= (double(wp.N()) - double(wp.n_resp()) - double(i)) / (double(wp.N()) - double(i));
  const double expected = 1.0 - prob_empty;
  CHECK(expected >= p2 - 1e-12);

  double acc = 0.0;
  const int worlds = 64;
  for (int t = 0; t < worlds; ++t) {
    world::OracleWorld w(wp, 1000 + t);
    std::size_t nonempty = 0;
    for (std::uint32_t com = 0; com < wp.M(); ++com) {
      std::vector<std::uint8_t> seen(wp.n_ch(), 0);
      for (auto x : w.instance().set_of(com)) seen[wp.ch_of(x)] = 1;
      for (auto s : seen) nonempty += s;
    }
    acc += double(nonempty) / double(wp.M() * wp.n_ch());
  }
  acc /= worlds;
  CHECK(acc >= p2 - 0.02);
  CHECK(std::fabs(acc - expected) <= 0.02);
}

TEST_CASE("world JSON dump is deterministic and faithful") {
  world::WorldParams wp{2, 2, 3};
  world::OracleWorld w(wp, 5);
  (void)w.oracle_S(3);
  (void)w.oracle_P(w.w0(), 1, 0, 7);
  const auto j1 = w.to_json();
  const auto j2 = w.to_json();
  CHECK(j1.dump() == j2.dump());
  CHECK(j1["params"]["k"] == wp.k());
  CHECK(j1["w0"] == w.w0());
  CHECK(j1["sets"].size() == wp.M());
  CHECK(j1["os_table"].size() == 1);
  world::OracleWorld w2(wp, 5);
  (void)w2.oracle_S(3);
  (void)w2.oracle_P(w2.w0(), 1, 0, 7);
  CHECK(w2.to_json().dump() == j1.dump());
}

TEST_CASE("oracle applier shape checks") {
  sim::RandomSource rng(13);
  auto inst = world::sample_instance({2, 8, 2}, rng);
  auto wrong = AmplitudeVector::uniform({2, 4});
  CHECK_THROWS_AS(world::apply_O_F(inst, wrong), std::invalid_argument);
  CHECK_THROWS_AS(world::apply_O_V_xor(inst, wrong), std::invalid_argument);
  auto wrong2 = AmplitudeVector::uniform({18});  // bot-extended space is 17-dim here
  CHECK_THROWS_AS(world::apply_O_Psi(inst, wrong2), std::invalid_argument);
}
