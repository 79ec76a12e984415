#pragma once
// State-creation-oracle machinery: reservoir states, the cyclic-shift
// circuit that emulates O_Psi from a finite reservoir, the
// symmetric-subspace reflection that emulates O_Ref from test copies,
// and the small-range function sampler.
//
// The single-copy space is abstract: basis index 0 is |Psi>, index 1 is
// |bot>, the rest is the fixed orthogonal complement. The lemmas being
// checked are basis-free, so simulating in this basis is exact. Inputs
// supported on {Psi, bot} stay there under every circuit gate, which is
// what makes the d_eff = 2 sweeps at large n, m exact as well.

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "qpick/simcore.hpp"

namespace qpick::emu {

// |Psi>^{x m} tensor |alpha_1> .. |alpha_n>, with
// |alpha_j> = cos(j pi / 2n) |Psi> + sin(j pi / 2n) |bot>.
struct ReservoirState {
  std::size_t d = 2;
  unsigned m = 0;
  unsigned n = 0;
  sim::AmplitudeVector state;  // registers: m plain copies then n interpolants
};
ReservoirState make_reservoir(std::size_t d, unsigned m, unsigned n);

// Cyclic shift S |Phi_0>|Phi_1>..|Phi_r-1> = |Phi_1>..|Phi_r-1>|Phi_0>
// over all registers (equal dimensions required).
sim::AmplitudeVector cyclic_shift(const sim::AmplitudeVector& state);

// || S(bot x R) - Psi x R || = sqrt(2 (1 - cos(pi/2n)^n)).
double shift_quality(unsigned n);

enum class RefMode { ExactORef, SymmetricTest };

struct EmulationConfig {
  std::size_t d = 5;
  unsigned n = 4;                     // interpolant count (shift reservoir)
  unsigned m = 0;                     // test copies (only in SymmetricTest mode)
  RefMode mode = RefMode::ExactORef;
  void validate() const;
};

// Joint register layout: [X, R_1..R_n, T_1..T_m, Z] with Z a qubit.
sim::AmplitudeVector make_emulation_state(const EmulationConfig& cfg,
                                          const sim::AmplitudeVector& work);
// One emulated O_Psi query: H cU_bot H cS H cO_Ref H cS~ H cU_bot H,
// controls on Z.
sim::AmplitudeVector apply_emulated_opsi(const EmulationConfig& cfg,
                                         const sim::AmplitudeVector& joint);
// The exact oracle on the work register (swap Psi and bot, fix the rest).
sim::AmplitudeVector apply_exact_opsi_on_work(const EmulationConfig& cfg,
                                              const sim::AmplitudeVector& joint);
// Rotation by theta in the {Psi, bot} plane of the work register; used to
// feed different superposed inputs between queries.
sim::AmplitudeVector rotate_work(const EmulationConfig& cfg, const sim::AmplitudeVector& joint,
                                 double theta);

// Trace distance between q emulated queries and q exact queries on the
// work input cos(theta0)|Psi> + sin(theta0)|bot>, with a rotate_work by
// theta_step between consecutive queries.
double end_to_end_deviation(const EmulationConfig& cfg, unsigned q, double theta0,
                            double theta_step);

// P_V and I - 2 P_V for V the permutation-invariant subspace of all
// registers of the input (equal dimensions). Built by averaging all r!
// register permutations; register counts above 6 are rejected.
sim::AmplitudeVector symmetric_project(const sim::AmplitudeVector& state);
sim::AmplitudeVector symmetric_reflection(const sim::AmplitudeVector& state);
// Same projector via orbit (type-class) averaging; no factorial budget.
// Used inside the emulation circuit and equivalence-tested against the
// permutation-averaged construction.
sim::AmplitudeVector symmetric_project_orbit(const sim::AmplitudeVector& state);

struct SmallRangeFunction {
  std::size_t s = 1;
  std::vector<std::uint64_t> values;                     // y_1 .. y_s from D_Y
  std::unordered_map<std::uint64_t, std::size_t> index;  // memoized z -> i_z
  sim::RandomSource rng{0};

  std::uint64_t eval(std::uint64_t z);
};

SmallRangeFunction small_range_sample(std::size_t s,
                                      const std::function<std::uint64_t(sim::RandomSource&)>& dist,
                                      sim::RandomSource& rng);

}  // namespace qpick::emu
