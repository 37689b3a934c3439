#include "qseed/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qseed::qsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kNormTolerance = 1e-6;

int qubits_for_size(std::size_t size) {
  if (size < 2 || !std::has_single_bit(size))
    throw std::invalid_argument("state size must be a power of two >= 2");
  int n = std::countr_zero(size);
  if (n > kMaxQubits)
    throw std::invalid_argument("state exceeds " +
                                std::to_string(kMaxQubits) + " qubits");
  return n;
}

}  // namespace

StateVector::StateVector(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "]");
  n_ = n_qubits;
  amps_.assign(std::size_t{1} << n_, Amplitude{0.0, 0.0});
  amps_[0] = Amplitude{1.0, 0.0};
}

StateVector::StateVector(std::vector<Amplitude> amplitudes)
    : n_(qubits_for_size(amplitudes.size())), amps_(std::move(amplitudes)) {}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const Amplitude& a : amps_) s += std::norm(a);
  return s;
}

void StateVector::reset() {
  std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
  amps_[0] = Amplitude{1.0, 0.0};
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
}

void StateVector::apply_h(int target) {
  check_qubit(target);
  const std::size_t mask = std::size_t{1} << target;
  const std::size_t step = mask << 1;
  for (std::size_t base = 0; base < amps_.size(); base += step) {
    for (std::size_t i = base; i < base + mask; ++i) {
      const Amplitude a0 = amps_[i];
      const Amplitude a1 = amps_[i + mask];
      amps_[i] = (a0 + a1) * kInvSqrt2;
      amps_[i + mask] = (a0 - a1) * kInvSqrt2;
    }
  }
}

void StateVector::apply_ry(int target, double theta) {
  check_qubit(target);
  if (!std::isfinite(theta))
    throw std::invalid_argument("rotation angle must be finite");
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::size_t mask = std::size_t{1} << target;
  const std::size_t step = mask << 1;
  for (std::size_t base = 0; base < amps_.size(); base += step) {
    for (std::size_t i = base; i < base + mask; ++i) {
      const Amplitude a0 = amps_[i];
      const Amplitude a1 = amps_[i + mask];
      amps_[i] = c * a0 - s * a1;
      amps_[i + mask] = s * a0 + c * a1;
    }
  }
}

void StateVector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target)
    throw std::invalid_argument("cnot control and target must differ");
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  const std::size_t low = std::min(cmask, tmask);
  const std::size_t high = std::max(cmask, tmask);
  const std::size_t quarter = amps_.size() >> 2;
  for (std::size_t i = 0; i < quarter; ++i) {
    // Spread i over the index bits excluding the two gate wires, then pin
    // control=1, target=0; its partner differs only in the target bit.
    std::size_t idx = ((i & ~(low - 1)) << 1) | (i & (low - 1));
    idx = ((idx & ~(high - 1)) << 1) | (idx & (high - 1));
    idx |= cmask;
    std::swap(amps_[idx], amps_[idx | tmask]);
  }
}

namespace {

ShotHistogram sample_impl(const StateVector& state, std::uint64_t shots,
                          RngStream& rng, std::vector<double>& cumulative) {
  if (shots == 0) throw std::invalid_argument("shot count must be positive");
  const auto& amps = state.amplitudes();
  cumulative.resize(amps.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    acc += std::norm(amps[i]);
    cumulative[i] = acc;
  }
  if (std::abs(acc - 1.0) > kNormTolerance)
    throw std::invalid_argument("cannot sample an unnormalized state");

  ShotHistogram hist;
  hist.total_shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= cumulative.size()) idx = cumulative.size() - 1;
    ++hist.counts[idx];
  }
  return hist;
}

}  // namespace

ShotHistogram sample(const StateVector& state, std::uint64_t shots,
                     RngStream& rng) {
  std::vector<double> cumulative;
  return sample_impl(state, shots, rng, cumulative);
}

ShotHistogram Sampler::sample(const StateVector& state, std::uint64_t shots,
                              RngStream& rng) {
  return sample_impl(state, shots, rng, cumulative_);
}

}  // namespace qseed::qsim
