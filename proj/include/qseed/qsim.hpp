#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qseed/rng.hpp"

namespace qseed::qsim {

inline constexpr int kMaxQubits = 20;

using Amplitude = std::complex<double>;

// Dense state vector over n qubits, 1 <= n <= kMaxQubits. Qubit 0 is the
// least-significant bit of the basis index everywhere in this project.
class StateVector {
 public:
  // |0...0> on n qubits.
  explicit StateVector(int n_qubits);

  // Takes ownership of raw amplitudes; size must be a power of two within
  // the qubit limit. No normalization is applied.
  explicit StateVector(std::vector<Amplitude> amplitudes);

  int n_qubits() const { return n_; }
  std::size_t size() const { return amps_.size(); }
  Amplitude amplitude(std::uint64_t basis) const { return amps_.at(basis); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }

  double norm_sq() const;

  // Back to |0...0> without reallocating.
  void reset();

  void apply_h(int target);
  void apply_ry(int target, double theta);
  void apply_cnot(int control, int target);

 private:
  void check_qubit(int q) const;

  int n_;
  std::vector<Amplitude> amps_;
};

// Measured counts per computational-basis index.
struct ShotHistogram {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total_shots = 0;
};

// Samples `shots` basis indices from |amp|^2 by inverse-CDF over the
// cumulative squared amplitudes, consuming exactly one uniform draw per
// shot. Rejects unnormalized states (deviation > 1e-6) and shots == 0.
// The cumulative buffer is rebuilt per call; use Sampler to amortize it.
ShotHistogram sample(const StateVector& state, std::uint64_t shots,
                     RngStream& rng);

// Keeps the cumulative-weight buffer between calls so repeated sampling of
// same-width states does not reallocate.
class Sampler {
 public:
  ShotHistogram sample(const StateVector& state, std::uint64_t shots,
                       RngStream& rng);

 private:
  std::vector<double> cumulative_;
};

}  // namespace qseed::qsim
