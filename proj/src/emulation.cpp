#include "qpick/emulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qpick::emu {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kStateBudget = std::size_t(1) << 22;

struct Layout {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> strides;

  explicit Layout(const std::vector<std::size_t>& d) : dims(d), strides(d.size(), 1) {
    for (std::size_t r = d.size(); r-- > 1;) strides[r - 1] = strides[r] * dims[r];
  }
  std::size_t digit(std::size_t index, std::size_t reg) const {
    return (index / strides[reg]) % dims[reg];
  }
};

sim::AmplitudeVector alpha_state(std::size_t d, unsigned j, unsigned n) {
  auto v = sim::AmplitudeVector::zero({d});
  const double ang = double(j) * kPi / (2.0 * double(n));
  v.amps[0] = std::cos(ang);
  v.amps[1] = std::sin(ang);
  return v;
}

sim::AmplitudeVector tensor(const sim::AmplitudeVector& a, const sim::AmplitudeVector& b) {
  std::vector<std::size_t> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  auto out = sim::AmplitudeVector::zero(std::move(dims));
  const std::size_t nb = b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < nb; ++j) out.amps[i * nb + j] = a.amps[i] * b.amps[j];
  return out;
}

void hadamard_last(sim::AmplitudeVector& v) {
  const double inv = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < v.dim(); i += 2) {
    const sim::cplx a0 = v.amps[i], a1 = v.amps[i + 1];
    v.amps[i] = (a0 + a1) * inv;
    v.amps[i + 1] = (a0 - a1) * inv;
  }
}

// diag phase on one register level, applied on the Z = 1 branch
void controlled_level_phase(sim::AmplitudeVector& v, const Layout& lay, std::size_t reg,
                            std::size_t level) {
  for (std::size_t i = 0; i < v.dim(); ++i)
    if ((i & 1u) && lay.digit(i, reg) == level) v.amps[i] = -v.amps[i];
}

// cyclic shift of registers [0 .. count) on the Z = 1 branch;
// dir=+1 shifts content of register 0 to register count-1.
sim::AmplitudeVector controlled_cycle(const sim::AmplitudeVector& v, const Layout& lay,
                                      std::size_t count, int dir) {
  sim::AmplitudeVector out = v;
  const std::size_t d = lay.dims[0];
  std::vector<std::size_t> digits(count);
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (!(i & 1u)) continue;
    std::size_t rest = i;
    for (std::size_t r = 0; r < count; ++r) digits[r] = lay.digit(i, r);
    for (std::size_t r = 0; r < count; ++r) rest -= digits[r] * lay.strides[r];
    std::size_t target = rest;
    if (dir > 0) {
      // |d0 d1 .. dc-1> -> |d1 .. dc-1 d0>
      for (std::size_t r = 0; r + 1 < count; ++r) target += digits[r + 1] * lay.strides[r];
      target += digits[0] * lay.strides[count - 1];
    } else {
      for (std::size_t r = 1; r < count; ++r) target += digits[r - 1] * lay.strides[r];
      target += digits[count - 1] * lay.strides[0];
    }
    out.amps[target] = v.amps[i];
    (void)d;
  }
  return out;
}

void check_equal_register_dims(const sim::AmplitudeVector& state) {
  if (state.dims.empty()) throw std::invalid_argument("expected at least one register");
  for (auto dd : state.dims)
    if (dd != state.dims[0]) throw std::invalid_argument("registers must have equal dimensions");
}

// orbit-averaged symmetric projector over an explicit register subset,
// restricted to the Z = 1 branch when controlled is set
sim::AmplitudeVector orbit_project(const sim::AmplitudeVector& v, const Layout& lay,
                                   const std::vector<std::size_t>& regs, bool controlled) {
  std::vector<sim::cplx> sums(v.dim(), sim::cplx(0, 0));
  std::vector<std::uint32_t> counts(v.dim(), 0);
  std::vector<std::size_t> canon(v.dim());
  std::vector<std::size_t> digits(regs.size());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (controlled && !(i & 1u)) continue;
    for (std::size_t r = 0; r < regs.size(); ++r) digits[r] = lay.digit(i, regs[r]);
    std::sort(digits.begin(), digits.end());
    std::size_t base = i;
    for (std::size_t r = 0; r < regs.size(); ++r)
      base -= lay.digit(i, regs[r]) * lay.strides[regs[r]];
    for (std::size_t r = 0; r < regs.size(); ++r) base += digits[r] * lay.strides[regs[r]];
    canon[i] = base;
    sums[base] += v.amps[i];
    counts[base] += 1;
  }
  sim::AmplitudeVector out = v;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (controlled && !(i & 1u)) continue;
    out.amps[i] = sums[canon[i]] / double(counts[canon[i]]);
  }
  return out;
}

}  // namespace

ReservoirState make_reservoir(std::size_t d, unsigned m, unsigned n) {
  if (d < 2) throw std::invalid_argument("reservoir: single copy dimension must be >= 2");
  if (n < 1) throw std::invalid_argument("reservoir: need n >= 1 interpolants");
  double total = 1.0;
  for (unsigned i = 0; i < m + n; ++i) total *= double(d);
  if (total > double(kStateBudget)) throw std::invalid_argument("reservoir: beyond state budget");

  ReservoirState r;
  r.d = d;
  r.m = m;
  r.n = n;
  auto psi = sim::AmplitudeVector::basis({d}, 0);
  sim::AmplitudeVector acc;
  bool first = true;
  for (unsigned i = 0; i < m; ++i) {
    acc = first ? psi : tensor(acc, psi);
    first = false;
  }
  for (unsigned j = 1; j <= n; ++j) {
    auto a = alpha_state(d, j, n);
    acc = first ? a : tensor(acc, a);
    first = false;
  }
  r.state = std::move(acc);
  return r;
}

sim::AmplitudeVector cyclic_shift(const sim::AmplitudeVector& state) {
  check_equal_register_dims(state);
  const std::size_t count = state.dims.size();
  Layout lay(state.dims);
  sim::AmplitudeVector out = state;
  std::vector<std::size_t> digits(count);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    for (std::size_t r = 0; r < count; ++r) digits[r] = lay.digit(i, r);
    std::size_t target = 0;
    for (std::size_t r = 0; r + 1 < count; ++r) target += digits[r + 1] * lay.strides[r];
    target += digits[0] * lay.strides[count - 1];
    out.amps[target] = state.amps[i];
  }
  return out;
}

double shift_quality(unsigned n) {
  if (n < 1) throw std::invalid_argument("shift_quality: n >= 1");
  const double c = std::pow(std::cos(kPi / (2.0 * double(n))), double(n));
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - c)));
}

void EmulationConfig::validate() const {
  if (d < 2) throw std::invalid_argument("emulation: d must be >= 2");
  if (n < 1) throw std::invalid_argument("emulation: n >= 1");
  if (mode == RefMode::ExactORef && m != 0)
    throw std::invalid_argument("emulation: test copies only exist in symmetric-test mode");
  double total = 2.0;
  for (unsigned i = 0; i < 1 + n + m; ++i) total *= double(d);
  if (total > double(kStateBudget))
    throw std::invalid_argument("emulation: joint state beyond budget (reduce d, n or m)");
}

sim::AmplitudeVector make_emulation_state(const EmulationConfig& cfg,
                                          const sim::AmplitudeVector& work) {
  cfg.validate();
  if (work.dims.size() != 1 || work.dims[0] != cfg.d)
    throw std::invalid_argument("emulation: work register dimension mismatch");
  auto joint = work;
  auto psi = sim::AmplitudeVector::basis({cfg.d}, 0);
  for (unsigned j = 1; j <= cfg.n; ++j) joint = tensor(joint, alpha_state(cfg.d, j, cfg.n));
  for (unsigned i = 0; i < cfg.m; ++i) joint = tensor(joint, psi);
  joint = tensor(joint, sim::AmplitudeVector::basis({2}, 0));
  return joint;
}

sim::AmplitudeVector apply_emulated_opsi(const EmulationConfig& cfg,
                                         const sim::AmplitudeVector& joint) {
  cfg.validate();
  Layout lay(joint.dims);
  const std::size_t zreg = joint.dims.size() - 1;
  if (joint.dims[zreg] != 2) throw std::invalid_argument("emulation: missing ancilla qubit");

  sim::AmplitudeVector v = joint;
  auto cu_bot = [&] { controlled_level_phase(v, lay, 0, 1); };
  auto co_ref = [&] {
    if (cfg.mode == RefMode::ExactORef) {
      controlled_level_phase(v, lay, 0, 0);
    } else {
      std::vector<std::size_t> regs{0};
      for (unsigned t = 0; t < cfg.m; ++t) regs.push_back(1 + cfg.n + t);
      auto proj = orbit_project(v, lay, regs, /*controlled=*/true);
      for (std::size_t i = 0; i < v.dim(); ++i)
        if (i & 1u) v.amps[i] -= 2.0 * proj.amps[i];
    }
  };

  hadamard_last(v);
  cu_bot();
  hadamard_last(v);
  v = controlled_cycle(v, lay, cfg.n + 1, +1);
  hadamard_last(v);
  co_ref();
  hadamard_last(v);
  v = controlled_cycle(v, lay, cfg.n + 1, -1);
  hadamard_last(v);
  cu_bot();
  hadamard_last(v);
  return v;
}

sim::AmplitudeVector apply_exact_opsi_on_work(const EmulationConfig& cfg,
                                              const sim::AmplitudeVector& joint) {
  Layout lay(joint.dims);
  sim::AmplitudeVector out = joint;
  const std::size_t stride0 = lay.strides[0];
  for (std::size_t i = 0; i < joint.dim(); ++i) {
    const std::size_t x = lay.digit(i, 0);
    if (x == 0) std::swap(out.amps[i], out.amps[i + stride0]);
  }
  (void)cfg;
  return out;
}

sim::AmplitudeVector rotate_work(const EmulationConfig& cfg, const sim::AmplitudeVector& joint,
                                 double theta) {
  Layout lay(joint.dims);
  (void)cfg;
  sim::AmplitudeVector out = joint;
  const std::size_t stride0 = lay.strides[0];
  const double c = std::cos(theta), s = std::sin(theta);
  for (std::size_t i = 0; i < joint.dim(); ++i) {
    if (lay.digit(i, 0) != 0) continue;
    const sim::cplx a0 = out.amps[i], a1 = out.amps[i + stride0];
    out.amps[i] = c * a0 - s * a1;
    out.amps[i + stride0] = s * a0 + c * a1;
  }
  return out;
}

double end_to_end_deviation(const EmulationConfig& cfg, unsigned q, double theta0,
                            double theta_step) {
  auto work = sim::AmplitudeVector::zero({cfg.d});
  work.amps[0] = std::cos(theta0);
  work.amps[1] = std::sin(theta0);
  auto emulated = make_emulation_state(cfg, work);
  auto ideal = emulated;
  for (unsigned t = 0; t < q; ++t) {
    emulated = apply_emulated_opsi(cfg, emulated);
    ideal = apply_exact_opsi_on_work(cfg, ideal);
    if (t + 1 < q) {
      emulated = rotate_work(cfg, emulated, theta_step);
      ideal = rotate_work(cfg, ideal, theta_step);
    }
  }
  return sim::trace_distance_pure(emulated, ideal);
}

sim::AmplitudeVector symmetric_project(const sim::AmplitudeVector& state) {
  check_equal_register_dims(state);
  const std::size_t count = state.dims.size();
  if (count > 6) throw std::invalid_argument("symmetric projector: register count beyond factorial budget");
  Layout lay(state.dims);
  std::vector<std::size_t> perm(count);
  std::iota(perm.begin(), perm.end(), 0);
  sim::AmplitudeVector acc = sim::AmplitudeVector::zero(state.dims);
  std::vector<std::size_t> digits(count);
  std::size_t nperm = 0;
  do {
    ++nperm;
    for (std::size_t i = 0; i < state.dim(); ++i) {
      for (std::size_t r = 0; r < count; ++r) digits[r] = lay.digit(i, r);
      std::size_t j = 0;
      for (std::size_t r = 0; r < count; ++r) j += digits[perm[r]] * lay.strides[r];
      acc.amps[i] += state.amps[j];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  kernels::cscale(sim::cplx(1.0 / double(nperm), 0.0), acc.amps.data(), acc.amps.size());
  return acc;
}

sim::AmplitudeVector symmetric_reflection(const sim::AmplitudeVector& state) {
  auto proj = symmetric_project(state);
  sim::AmplitudeVector out = state;
  kernels::caxpy(sim::cplx(-2.0, 0.0), proj.amps.data(), out.amps.data(), out.amps.size());
  return out;
}

sim::AmplitudeVector symmetric_project_orbit(const sim::AmplitudeVector& state) {
  check_equal_register_dims(state);
  Layout lay(state.dims);
  std::vector<std::size_t> regs(state.dims.size());
  std::iota(regs.begin(), regs.end(), 0);
  return orbit_project(state, lay, regs, /*controlled=*/false);
}

std::uint64_t SmallRangeFunction::eval(std::uint64_t z) {
  auto it = index.find(z);
  if (it == index.end()) it = index.emplace(z, std::size_t(rng.uniform_below(s))).first;
  return values[it->second];
}

SmallRangeFunction small_range_sample(std::size_t s,
                                      const std::function<std::uint64_t(sim::RandomSource&)>& dist,
                                      sim::RandomSource& rng) {
  if (s < 1) throw std::invalid_argument("small range: s >= 1");
  SmallRangeFunction f;
  f.s = s;
  f.values.reserve(s);
  for (std::size_t i = 0; i < s; ++i) f.values.push_back(dist(rng));
  f.rng = rng.fork(0x5ca1ab1e);
  return f;
}

}  // namespace qpick::emu
