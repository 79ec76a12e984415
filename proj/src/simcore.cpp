#include "qpick/simcore.hpp"

#include <cmath>
#include <stdexcept>

#include "qpick/stats.hpp"

namespace qpick::sim {

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
  std::uint64_t s = seed;
  gen_.seed(stats::splitmix64(s));
}

std::uint64_t RandomSource::next_u64() { return gen_(); }

double RandomSource::next_double() { return double(gen_() >> 11) * 0x1.0p-53; }

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  // rejection sampling keeps the draw exactly uniform
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = gen_();
  } while (v >= limit);
  return v % bound;
}

RandomSource RandomSource::fork(std::uint64_t stream) const {
  std::uint64_t s = seed_ ^ (0x5851f42d4c957f2dull * (stream + 1));
  return RandomSource(stats::splitmix64(s));
}

static std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) {
    if (d == 0) throw std::invalid_argument("register of dimension zero");
    p *= d;
  }
  return p;
}

AmplitudeVector AmplitudeVector::zero(std::vector<std::size_t> dims) {
  AmplitudeVector v;
  v.dims = std::move(dims);
  v.amps.assign(product(v.dims), cplx(0.0, 0.0));
  return v;
}

AmplitudeVector AmplitudeVector::basis(std::vector<std::size_t> dims, std::size_t index) {
  AmplitudeVector v = zero(std::move(dims));
  if (index >= v.amps.size()) throw std::invalid_argument("basis index out of range");
  v.amps[index] = 1.0;
  return v;
}

AmplitudeVector AmplitudeVector::uniform(std::vector<std::size_t> dims) {
  AmplitudeVector v = zero(std::move(dims));
  const double a = 1.0 / std::sqrt(double(v.amps.size()));
  for (auto& c : v.amps) c = a;
  return v;
}

std::size_t AmplitudeVector::dim() const { return amps.size(); }

double AmplitudeVector::norm() const { return std::sqrt(sqnorm()); }

bool AmplitudeVector::is_normalized(double tol) const { return std::fabs(sqnorm() - 1.0) <= tol; }

void AmplitudeVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  kernels::cscale(cplx(1.0 / n, 0.0), amps.data(), amps.size());
}

cplx AmplitudeVector::inner(const AmplitudeVector& other) const {
  if (dims != other.dims) throw std::invalid_argument("inner: shape mismatch");
  return kernels::cdot(amps.data(), other.amps.data(), amps.size());
}

void reflect_block(cplx* block, const cplx* axis, std::size_t n) {
  const cplx ov = kernels::cdot(axis, block, n);
  kernels::caxpy(-2.0 * ov, axis, block, n);
}

AmplitudeVector reflect_about(const AmplitudeVector& state, const AmplitudeVector& axis,
                              std::size_t target_register) {
  if (target_register >= state.dims.size())
    throw std::invalid_argument("reflect_about: no such register");
  const std::size_t tdim = state.dims[target_register];
  if (axis.dim() != tdim) throw std::invalid_argument("reflect_about: axis dimension mismatch");

  std::size_t inner = 1;
  for (std::size_t r = target_register + 1; r < state.dims.size(); ++r) inner *= state.dims[r];
  const std::size_t outer = state.dim() / (tdim * inner);

  AmplitudeVector out = state;
  if (inner == 1) {
    for (std::size_t o = 0; o < outer; ++o)
      reflect_block(out.amps.data() + o * tdim, axis.amps.data(), tdim);
    return out;
  }
  // strided register: gather/scatter per block
  std::vector<cplx> block(tdim);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      const std::size_t base = o * tdim * inner + in;
      for (std::size_t t = 0; t < tdim; ++t) block[t] = out.amps[base + t * inner];
      reflect_block(block.data(), axis.amps.data(), tdim);
      for (std::size_t t = 0; t < tdim; ++t) out.amps[base + t * inner] = block[t];
    }
  }
  return out;
}

AmplitudeVector reflect_about_full(const AmplitudeVector& state, const AmplitudeVector& axis) {
  if (axis.dim() != state.dim()) throw std::invalid_argument("reflect_about_full: shape mismatch");
  AmplitudeVector out = state;
  reflect_block(out.amps.data(), axis.amps.data(), out.amps.size());
  return out;
}

AmplitudeVector apply_phase_predicate(const AmplitudeVector& state,
                                      const std::vector<std::uint8_t>& mask) {
  if (mask.size() != state.dim()) throw std::invalid_argument("phase predicate: mask size mismatch");
  AmplitudeVector out = state;
  kernels::negate_masked(out.amps.data(), mask.data(), out.amps.size());
  return out;
}

AmplitudeVector apply_phase_predicate(const AmplitudeVector& state,
                                      const std::function<bool(std::size_t)>& pred) {
  std::vector<std::uint8_t> mask(state.dim());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = pred(i) ? 1 : 0;
  return apply_phase_predicate(state, mask);
}

std::pair<MeasurementBranch, MeasurementBranch> measure_projector_branches(
    const AmplitudeVector& state, const std::vector<std::uint8_t>& mask) {
  if (mask.size() != state.dim()) throw std::invalid_argument("projector: mask size mismatch");
  AmplitudeVector hit = AmplitudeVector::zero(state.dims);
  AmplitudeVector miss = AmplitudeVector::zero(state.dims);
  for (std::size_t i = 0; i < mask.size(); ++i) (mask[i] ? hit : miss).amps[i] = state.amps[i];
  MeasurementBranch b1, b0;
  b1.outcome = 1;
  b0.outcome = 0;
  b1.probability = hit.sqnorm();
  b0.probability = miss.sqnorm();
  if (b1.probability > 0.0) {
    hit.normalize();
    b1.post_state = std::move(hit);
  }
  if (b0.probability > 0.0) {
    miss.normalize();
    b0.post_state = std::move(miss);
  }
  return {b1, b0};
}

MeasurementOutcome measure_projector(const AmplitudeVector& state,
                                     const std::vector<std::uint8_t>& mask, RandomSource& rng) {
  auto [b1, b0] = measure_projector_branches(state, mask);
  MeasurementOutcome out;
  if (rng.next_double() < b1.probability) {
    out.outcome = 1;
    out.probability = b1.probability;
    out.post_state = std::move(*b1.post_state);
  } else {
    out.outcome = 0;
    out.probability = b0.probability;
    out.post_state = std::move(*b0.post_state);
  }
  return out;
}

std::vector<MeasurementBranch> measure_computational_branches(const AmplitudeVector& state,
                                                              std::size_t target_register) {
  if (target_register >= state.dims.size())
    throw std::invalid_argument("measure: no such register");
  const std::size_t tdim = state.dims[target_register];
  std::size_t inner = 1;
  for (std::size_t r = target_register + 1; r < state.dims.size(); ++r) inner *= state.dims[r];
  const std::size_t outer = state.dim() / (tdim * inner);

  std::vector<MeasurementBranch> branches(tdim);
  for (std::size_t t = 0; t < tdim; ++t) branches[t].outcome = t;
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t t = 0; t < tdim; ++t)
      for (std::size_t in = 0; in < inner; ++in) {
        const cplx a = state.amps[(o * tdim + t) * inner + in];
        branches[t].probability += a.real() * a.real() + a.imag() * a.imag();
      }
  for (std::size_t t = 0; t < tdim; ++t) {
    if (branches[t].probability <= 0.0) continue;
    AmplitudeVector post = AmplitudeVector::zero(state.dims);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t in = 0; in < inner; ++in) {
        const std::size_t idx = (o * tdim + t) * inner + in;
        post.amps[idx] = state.amps[idx];
      }
    post.normalize();
    branches[t].post_state = std::move(post);
  }
  return branches;
}

MeasurementOutcome measure_computational(const AmplitudeVector& state, std::size_t target_register,
                                         RandomSource& rng) {
  auto branches = measure_computational_branches(state, target_register);
  double u = rng.next_double();
  for (auto& b : branches) {
    if (!b.post_state) continue;
    if (u < b.probability) {
      MeasurementOutcome out;
      out.outcome = b.outcome;
      out.probability = b.probability;
      out.post_state = std::move(*b.post_state);
      return out;
    }
    u -= b.probability;
  }
  // numerical remainder: fall back to the last populated branch
  for (auto it = branches.rbegin(); it != branches.rend(); ++it)
    if (it->post_state) {
      MeasurementOutcome out;
      out.outcome = it->outcome;
      out.probability = it->probability;
      out.post_state = std::move(*it->post_state);
      return out;
    }
  throw std::domain_error("measure: zero state");
}

double trace_distance_pure(const AmplitudeVector& a, const AmplitudeVector& b) {
  const cplx ov = a.inner(b);
  const double m = ov.real() * ov.real() + ov.imag() * ov.imag();
  return std::sqrt(std::max(0.0, 1.0 - m));
}

double statistical_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("statistical_distance: support mismatch");
  double sp = 0.0, sq = 0.0, sd = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sp += p[i];
    sq += q[i];
    sd += std::fabs(p[i] - q[i]);
  }
  if (std::fabs(sp - 1.0) > kNormTol || std::fabs(sq - 1.0) > kNormTol)
    throw std::invalid_argument("statistical_distance: inputs must sum to 1");
  return 0.5 * sd;
}

double overlap_mod(const AmplitudeVector& a, const AmplitudeVector& b) { return std::abs(a.inner(b)); }

}  // namespace qpick::sim
