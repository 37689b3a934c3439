#pragma once

#include <cstdint>
#include <vector>

#include "qseed/encoding.hpp"
#include "qseed/gradfree.hpp"
#include "qseed/qsim.hpp"
#include "qseed/rng.hpp"

namespace qseed::vqe {

struct AnsatzConfig {
  int n_qubits = 0;
  int layers = 3;
  int parameter_count() const { return n_qubits * layers; }
};

// Hardware-efficient ansatz: Hadamard on every wire, then `layers` blocks,
// each a full Ry layer (theta[block*n + q] on wire q) followed by the
// cyclic CNOT ring q -> q+1, closing with n-1 -> 0.
void apply_ansatz(const AnsatzConfig& cfg, const std::vector<double>& theta,
                  qsim::StateVector& state);
qsim::StateVector build_ansatz(const AnsatzConfig& cfg,
                               const std::vector<double>& theta);

struct CVaRConfig {
  std::uint64_t shots = 1000;
  double alpha = 0.1;
  std::uint64_t tail_size() const;
};

// Slice of the measured distribution contributing to the CVaR tail, sorted
// by (energy, bitstring index). States whose energy falls strictly below
// the cutoff keep their full shot count; the shots remaining at the cutoff
// energy are split across the tied states in proportion to their counts,
// so the weights sum to exactly tail_size. A constant-energy histogram
// therefore yields the whole distribution, scaled.
struct TailSample {
  std::uint64_t basis = 0;
  double energy = 0.0;
  double weight = 0.0;
};
std::vector<TailSample> cvar_tail(const encoding::DiagonalHamiltonian& h,
                                  const qsim::ShotHistogram& hist,
                                  const CVaRConfig& cfg);

// Mean of the lowest ceil(alpha * shots) per-shot energies.
double cvar_energy(const encoding::DiagonalHamiltonian& h,
                   const qsim::ShotHistogram& hist, const CVaRConfig& cfg);

struct FragmentResult {
  // Decoded coordinates of the lowest-energy bitstring observed in any
  // histogram of the run (training and final).
  std::vector<double> x_best;
  double e_best = 0.0;
  // Frequency-weighted centroid of the final-state CVaR tail, and the
  // per-coordinate RMS deviation of the tail about it.
  std::vector<double> x_cvar;
  std::vector<double> rms;
  qsim::ShotHistogram final_histogram;
  std::vector<double> cvar_trace;
  int evals_used = 0;
};

// Trains theta from zeros (uniform superposition start) to minimize the
// sampled CVaR, one histogram per optimizer evaluation, then draws one
// final histogram at the optimum for the tail statistics. The supplied
// stream is the only randomness. When the trust region bottoms out with
// budget to spare, training restarts from the best parameters so far and
// keeps going until fewer than parameter_count + 2 evaluations remain.
FragmentResult run_fragment(const encoding::DiagonalHamiltonian& h,
                            const AnsatzConfig& acfg, const CVaRConfig& ccfg,
                            const gradfree::GradFreeConfig& gcfg,
                            RngStream& rng);

}  // namespace qseed::vqe
