#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "qpick/emulation.hpp"
#include "qpick/stats.hpp"

using namespace qpick;
using sim::AmplitudeVector;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("cyclic shift rotates product states and has order r") {
  auto a = AmplitudeVector::basis({3}, 0);
  auto b = AmplitudeVector::basis({3}, 1);
  auto c = AmplitudeVector::basis({3}, 2);
  // |a b c> lives at index ((0*3)+1)*3+2 = 5
  auto abc = AmplitudeVector::basis({3, 3, 3}, 5);
  auto shifted = emu::cyclic_shift(abc);
  // expect |b c a> = index ((1*3)+2)*3+0 = 15
  CHECK(shifted.amps[15].real() == doctest::Approx(1.0));
  (void)a;
  (void)b;
  (void)c;

  sim::RandomSource rng(1);
  auto rnd = AmplitudeVector::zero({2, 2, 2, 2});
  for (auto& v : rnd.amps) v = sim::cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
  rnd.normalize();
  auto cur = rnd;
  for (int i = 0; i < 4; ++i) cur = emu::cyclic_shift(cur);
  for (std::size_t i = 0; i < rnd.dim(); ++i) CHECK(std::abs(cur.amps[i] - rnd.amps[i]) <= 1e-12);

  auto bad = AmplitudeVector::uniform({2, 3});
  CHECK_THROWS_AS(emu::cyclic_shift(bad), std::invalid_argument);
}

TEST_CASE("reservoir overlap <S(bot x R) | Psi x R> = cos(pi/2n)^n") {
  for (unsigned n : {2u, 4u, 8u}) {
    auto r = emu::make_reservoir(2, 0, n);
    auto bot = AmplitudeVector::basis({2}, 1);
    auto psi = AmplitudeVector::basis({2}, 0);
    // assemble bot x R and Psi x R over n+1 registers
    auto assemble = [&](const AmplitudeVector& head) {
      std::vector<std::size_t> dims(n + 1, 2);
      auto v = AmplitudeVector::zero(dims);
      for (std::size_t i = 0; i < head.dim(); ++i)
        for (std::size_t j = 0; j < r.state.dim(); ++j)
          v.amps[i * r.state.dim() + j] = head.amps[i] * r.state.amps[j];
      return v;
    };
    auto lhs = emu::cyclic_shift(assemble(bot));
    auto rhs = assemble(psi);
    const double expect = std::pow(std::cos(kPi / (2.0 * n)), double(n));
    CHECK(lhs.inner(rhs).real() == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("shift_quality closed form and asymptotics") {
  CHECK(emu::shift_quality(1) == doctest::Approx(std::sqrt(2.0)));
  double prev = emu::shift_quality(1);
  for (unsigned n = 2; n <= 64; n *= 2) {
    const double q = emu::shift_quality(n);
    CHECK(q < prev);
    prev = q;
  }
  CHECK(emu::shift_quality(64) <= (kPi / (2.0 * 8.0)) * 1.1);
}

TEST_CASE("emulated O_Psi fixes inputs orthogonal to Psi and bot") {
  emu::EmulationConfig cfg{3, 4, 0, emu::RefMode::ExactORef};
  auto work = AmplitudeVector::basis({3}, 2);
  auto joint = emu::make_emulation_state(cfg, work);
  auto out = emu::apply_emulated_opsi(cfg, joint);
  for (std::size_t i = 0; i < joint.dim(); ++i)
    CHECK(std::abs(out.amps[i] - joint.amps[i]) <= 1e-7);
}

TEST_CASE("emulated O_Psi on |bot>: distance matches the shift closed form") {
  const unsigned n = 16;
  emu::EmulationConfig cfg{2, n, 0, emu::RefMode::ExactORef};
  auto joint = emu::make_emulation_state(cfg, AmplitudeVector::basis({2}, 1));
  auto out = emu::apply_emulated_opsi(cfg, joint);
  auto ideal = emu::apply_exact_opsi_on_work(cfg, joint);
  const double td = sim::trace_distance_pure(out, ideal);
  CHECK(td <= emu::shift_quality(n) + 1e-9);
}

TEST_CASE("self-inverse within twice the per-query deviation") {
  emu::EmulationConfig cfg{2, 8, 0, emu::RefMode::ExactORef};
  auto work = AmplitudeVector::zero({2});
  work.amps[0] = std::cos(0.9);
  work.amps[1] = std::sin(0.9);
  auto joint = emu::make_emulation_state(cfg, work);
  auto twice = emu::apply_emulated_opsi(cfg, emu::apply_emulated_opsi(cfg, joint));
  CHECK(sim::trace_distance_pure(twice, joint) <= 2.0 * emu::shift_quality(8) + 1e-9);
}

TEST_CASE("dense d = 5 run agrees with the invariant-subspace run") {
  emu::EmulationConfig big{5, 2, 2, emu::RefMode::SymmetricTest};
  emu::EmulationConfig small{2, 2, 2, emu::RefMode::SymmetricTest};
  for (unsigned q : {1u, 2u, 3u}) {
    const double t_big = emu::end_to_end_deviation(big, q, 0.7, 0.4);
    const double t_small = emu::end_to_end_deviation(small, q, 0.7, 0.4);
    CHECK(t_big == doctest::Approx(t_small).epsilon(1e-10));
  }
}

TEST_CASE("end-to-end deviation respects the combined bound") {
  for (unsigned q : {1u, 2u}) {
    for (unsigned n : {2u, 4u}) {
      for (unsigned m : {1u, 2u}) {
        emu::EmulationConfig cfg{2, n, m, emu::RefMode::SymmetricTest};
        const double td = emu::end_to_end_deviation(cfg, q, 0.7, 0.4);
        const double bound =
            double(q) * kPi / (2.0 * std::sqrt(double(n))) * 1.25 +
            2.0 * double(q) / std::sqrt(double(m + 1));
        CHECK(td <= bound);
      }
    }
  }
}

TEST_CASE("symmetric projector and reflection") {
  sim::RandomSource rng(3);
  const std::size_t d = 5;
  for (unsigned m : {1u, 2u, 4u}) {
    std::vector<std::size_t> dims(m + 1, d);
    // T = Psi^{(x)m} with a leading work register
    auto psi_block = AmplitudeVector::basis(dims, 0);  // |Psi>^{(x)(m+1)} is index 0
    auto neg = emu::symmetric_reflection(psi_block);
    CHECK(std::abs(neg.amps[0] + 1.0) <= 1e-7);  // exact -1 eigenvalue

    // random Phi orthogonal to Psi on the first register
    auto phi = AmplitudeVector::zero({d});
    for (std::size_t i = 1; i < d; ++i)
      phi.amps[i] = sim::cplx(rng.next_double() - 0.5, rng.next_double() - 0.5);
    phi.normalize();
    auto state = AmplitudeVector::zero(dims);
    const std::size_t tail = std::size_t(std::pow(double(d), double(m)));
    for (std::size_t i = 0; i < d; ++i) state.amps[i * tail + 0] = phi.amps[i];

    auto proj = emu::symmetric_project(state);
    // idempotent + self-adjoint within tolerance
    auto proj2 = emu::symmetric_project(proj);
    for (std::size_t i = 0; i < proj.dim(); ++i)
      CHECK(std::abs(proj2.amps[i] - proj.amps[i]) <= 1e-9);
    // <Phi T| P_V |Phi T> = 1 / (m+1)
    CHECK(state.inner(proj).real() == doctest::Approx(1.0 / double(m + 1)).epsilon(1e-9));

    // || U_V (Phi x T) - (O_Ref Phi) x T || <= 2 / sqrt(m+1); O_Ref
    // fixes Phi here
    auto refl = emu::symmetric_reflection(state);
    double diff = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) diff += std::norm(refl.amps[i] - state.amps[i]);
    CHECK(std::sqrt(diff) <= 2.0 / std::sqrt(double(m + 1)) + 1e-9);

    // orbit-averaged projector agrees with the factorial average
    auto orbit = emu::symmetric_project_orbit(state);
    for (std::size_t i = 0; i < proj.dim(); ++i)
      CHECK(std::abs(orbit.amps[i] - proj.amps[i]) <= 1e-10);
  }
  // factorial budget
  auto too_many = AmplitudeVector::uniform({2, 2, 2, 2, 2, 2, 2});
  CHECK_THROWS_AS(emu::symmetric_project(too_many), std::invalid_argument);
}

TEST_CASE("small-range function sampler") {
  sim::RandomSource rng(4);
  auto uniform16 = [](sim::RandomSource& r) { return r.uniform_below(16); };

  auto constant = emu::small_range_sample(1, uniform16, rng);
  for (std::uint64_t z = 0; z < 50; ++z) CHECK(constant.eval(z) == constant.values[0]);

  auto f = emu::small_range_sample(8, uniform16, rng);
  std::map<std::uint64_t, std::uint64_t> memo;
  std::map<std::uint64_t, int> image;
  for (std::uint64_t z = 0; z < 500; ++z) {
    const auto v = f.eval(z);
    memo[z] = v;
    image[v] = 1;
  }
  CHECK(image.size() <= 8);
  for (auto [z, v] : memo) CHECK(f.eval(z) == v);  // function semantics

  // marginal of G(z) over fresh z matches D_Y (chi-square), s = 64
  std::vector<std::uint64_t> counts(16, 0);
  for (int rep = 0; rep < 40; ++rep) {
    auto g = emu::small_range_sample(64, uniform16, rng);
    for (std::uint64_t z = 0; z < 250; ++z) counts[g.eval(z)]++;
  }
  CHECK(stats::chi2_uniform(counts).ok);
}

TEST_CASE("reservoir and config budgets") {
  CHECK_THROWS_AS(emu::make_reservoir(5, 8, 8), std::invalid_argument);
  emu::EmulationConfig bad{5, 8, 8, emu::RefMode::SymmetricTest};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  emu::EmulationConfig bad2{5, 4, 1, emu::RefMode::ExactORef};
  CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}
