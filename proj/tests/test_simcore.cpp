#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpick/simcore.hpp"

using namespace qpick;
using sim::AmplitudeVector;
using sim::cplx;

namespace {

AmplitudeVector random_state(sim::RandomSource& rng, std::vector<std::size_t> dims) {
  auto v = AmplitudeVector::zero(std::move(dims));
  for (auto& a : v.amps) a = cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
  v.normalize();
  return v;
}

}  // namespace

TEST_CASE("reflect_about on eigenvectors") {
  auto zero = AmplitudeVector::basis({2}, 0);
  auto one = AmplitudeVector::basis({2}, 1);
  auto r = sim::reflect_about(zero, zero, 0);
  CHECK(r.amps[0].real() == doctest::Approx(-1.0));
  r = sim::reflect_about(one, zero, 0);  // orthogonal state fixed
  CHECK(r.amps[1].real() == doctest::Approx(1.0));
}

TEST_CASE("reflect_about plus axis sends |0> to -|1>") {
  // explicit 2x2 matrix: I - 2|+><+| = [[0,-1],[-1,0]]
  auto plus = AmplitudeVector::uniform({2});
  auto s = sim::reflect_about(AmplitudeVector::basis({2}, 0), plus, 0);
  CHECK(s.amps[0].real() == doctest::Approx(0.0));
  CHECK(s.amps[1].real() == doctest::Approx(-1.0));
}

TEST_CASE("reflections and phase oracles are unitary involutions") {
  sim::RandomSource rng(11);
  for (int t = 0; t < 50; ++t) {
    auto state = random_state(rng, {4, 8});
    auto axis = random_state(rng, {8});
    auto once = sim::reflect_about(state, axis, 1);
    CHECK(once.sqnorm() == doctest::Approx(1.0).epsilon(1e-9));
    auto twice = sim::reflect_about(once, axis, 1);
    for (std::size_t i = 0; i < state.dim(); ++i)
      CHECK(std::abs(twice.amps[i] - state.amps[i]) <= 1e-9);

    std::vector<std::uint8_t> mask(state.dim());
    for (auto& m : mask) m = std::uint8_t(rng.next_u64() & 1);
    auto p = sim::apply_phase_predicate(state, mask);
    CHECK(p.sqnorm() == doctest::Approx(1.0).epsilon(1e-9));
    auto pp = sim::apply_phase_predicate(p, mask);
    for (std::size_t i = 0; i < state.dim(); ++i) CHECK(pp.amps[i] == state.amps[i]);
  }
}

TEST_CASE("reflect_about on a strided (non-terminal) register") {
  sim::RandomSource rng(12);
  auto state = random_state(rng, {3, 5});
  auto axis = random_state(rng, {3});
  auto got = sim::reflect_about(state, axis, 0);
  // reference: apply per block by hand
  auto want = state;
  for (std::size_t in = 0; in < 5; ++in) {
    cplx ov(0, 0);
    for (std::size_t t = 0; t < 3; ++t) ov += std::conj(axis.amps[t]) * state.amps[t * 5 + in];
    for (std::size_t t = 0; t < 3; ++t) want.amps[t * 5 + in] -= 2.0 * ov * axis.amps[t];
  }
  for (std::size_t i = 0; i < state.dim(); ++i) CHECK(std::abs(got.amps[i] - want.amps[i]) <= 1e-12);
}

TEST_CASE("phase predicate examples") {
  auto u4 = AmplitudeVector::uniform({4});
  auto all0 = sim::apply_phase_predicate(u4, [](std::size_t) { return false; });
  for (std::size_t i = 0; i < 4; ++i) CHECK(all0.amps[i] == u4.amps[i]);
  auto all1 = sim::apply_phase_predicate(u4, [](std::size_t) { return true; });
  for (std::size_t i = 0; i < 4; ++i) CHECK(all1.amps[i] == -u4.amps[i]);
  auto two = sim::apply_phase_predicate(u4, [](std::size_t i) { return i == 2; });
  CHECK(two.amps[2].real() == doctest::Approx(-0.5));
  CHECK(two.amps[1].real() == doctest::Approx(0.5));
}

TEST_CASE("measure_projector") {
  sim::RandomSource rng(3);
  auto u4 = AmplitudeVector::uniform({4});

  std::vector<std::uint8_t> all(4, 1);
  auto out = sim::measure_projector(u4, all, rng);
  CHECK(out.outcome == 1);
  CHECK(out.probability == doctest::Approx(1.0));

  std::vector<std::uint8_t> sel1{0, 1};
  auto z = AmplitudeVector::basis({2}, 0);
  auto o2 = sim::measure_projector(z, sel1, rng);
  CHECK(o2.outcome == 0);
  CHECK(o2.probability == doctest::Approx(1.0));

  std::vector<std::uint8_t> half{1, 1, 0, 0};
  auto [b1, b0] = sim::measure_projector_branches(u4, half);
  CHECK(b1.probability == doctest::Approx(0.5));
  CHECK(b0.probability == doctest::Approx(0.5));
  CHECK(b1.probability + b0.probability == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(b1.post_state.has_value());
  CHECK(b1.post_state->amps[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(b1.post_state->amps[2].real() == doctest::Approx(0.0));

  // zero-probability branch carries no state
  auto [c1, c0] = sim::measure_projector_branches(z, std::vector<std::uint8_t>{0, 1});
  CHECK(!c1.post_state.has_value());
  CHECK(c1.probability == doctest::Approx(0.0));
}

TEST_CASE("measure_computational") {
  sim::RandomSource rng(4);
  auto b3 = AmplitudeVector::basis({8}, 3);
  auto out = sim::measure_computational(b3, 0, rng);
  CHECK(out.outcome == 3);
  CHECK(out.probability == doctest::Approx(1.0));

  auto u8 = AmplitudeVector::uniform({8});
  auto branches = sim::measure_computational_branches(u8, 0);
  for (const auto& b : branches) CHECK(b.probability == doctest::Approx(0.125));

  auto s = AmplitudeVector::zero({2});
  s.amps[0] = 1.0 / std::sqrt(2.0);
  s.amps[1] = cplx(0.0, 1.0 / std::sqrt(2.0));
  auto bb = sim::measure_computational_branches(s, 0);
  CHECK(bb[0].probability == doctest::Approx(0.5));
  CHECK(bb[1].probability == doctest::Approx(0.5));
}

TEST_CASE("trace distance") {
  sim::RandomSource rng(5);
  auto a = random_state(rng, {16});
  CHECK(sim::trace_distance_pure(a, a) == doctest::Approx(0.0));
  auto e0 = AmplitudeVector::basis({4}, 0);
  auto e1 = AmplitudeVector::basis({4}, 1);
  CHECK(sim::trace_distance_pure(e0, e1) == doctest::Approx(1.0));

  // overlap sqrt(k/N) with k = 4, N = 16 gives sqrt(3)/2
  auto psi = AmplitudeVector::zero({16});
  for (int i = 0; i < 4; ++i) psi.amps[i] = 0.5;
  auto phi = AmplitudeVector::uniform({16});
  CHECK(std::abs(psi.inner(phi)) == doctest::Approx(0.5));
  CHECK(sim::trace_distance_pure(psi, phi) == doctest::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("trace distance bounded by norm distance") {
  sim::RandomSource rng(6);
  for (int t = 0; t < 200; ++t) {
    auto a = random_state(rng, {12});
    auto b = random_state(rng, {12});
    double nd = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) nd += std::norm(a.amps[i] - b.amps[i]);
    CHECK(sim::trace_distance_pure(a, b) <= std::sqrt(nd) + 1e-12);
  }
}

TEST_CASE("statistical distance") {
  CHECK(sim::statistical_distance({0.5, 0.5}, {0.5, 0.5}) == doctest::Approx(0.0));
  CHECK(sim::statistical_distance({1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(1.0));
  CHECK(sim::statistical_distance({1.0, 0.0}, {0.5, 0.5}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(sim::statistical_distance({1.0}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(sim::statistical_distance({0.9}, {1.0}), std::invalid_argument);
}

TEST_CASE("random source determinism and forking") {
  sim::RandomSource a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  auto f1 = sim::RandomSource(42).fork(7);
  auto f2 = sim::RandomSource(42).fork(7);
  auto f3 = sim::RandomSource(42).fork(8);
  CHECK(f1.next_u64() == f2.next_u64());
  CHECK(f1.next_u64() != f3.next_u64());
}

TEST_CASE("shape errors are rejected") {
  auto a = AmplitudeVector::uniform({4});
  auto axis = AmplitudeVector::uniform({3});
  CHECK_THROWS_AS(sim::reflect_about(a, axis, 0), std::invalid_argument);
  auto b = AmplitudeVector::uniform({8});
  CHECK_THROWS_AS(sim::trace_distance_pure(a, b), std::invalid_argument);
}
