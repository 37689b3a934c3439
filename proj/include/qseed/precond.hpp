#pragma once

#include <cstdint>
#include <vector>

#include "qseed/objectives.hpp"
#include "qseed/vqe.hpp"

namespace qseed::precond {

struct SeedBoxParams {
  double beta = 0.7;        // weight of x_best against the tail centroid
  double delta_base = 0.5;  // minimum trust radius
  double gamma = 2.0;       // RMS multiplier
};

// Classical search region handed to the refiner. Always non-empty and
// inside the objective bounds; delta_i >= delta_base.
struct SeedBox {
  std::vector<double> x_seed;
  std::vector<double> delta;
  std::vector<double> lb;
  std::vector<double> ub;
  SeedBoxParams params;
};

struct PrecondConfig {
  int k_qubits = 5;
  int layers = 3;
  vqe::CVaRConfig cvar;
  gradfree::GradFreeConfig train;
  SeedBoxParams box;
};

struct PrecondResult {
  SeedBox box;
  // One entry per dimension on the separable path; a single joint entry
  // otherwise.
  std::vector<vqe::FragmentResult> fragments;
};

// One dimension's K-qubit fragment of a separable objective. Public so the
// execution-order independence of fragments is directly testable: the
// stream is keyed by (trial_seed, dim), never by call order.
vqe::FragmentResult run_dimension_fragment(const objectives::Objective& obj,
                                           int dim, const PrecondConfig& cfg,
                                           std::uint64_t trial_seed);

// x_seed_i = beta * x_best_i + (1 - beta) * x_cvar_i,
// delta_i = delta_base + gamma * rms_i, box clipped to the bounds.
SeedBox assemble_box(const objectives::Objective& obj,
                     const std::vector<double>& x_best,
                     const std::vector<double>& x_cvar,
                     const std::vector<double>& rms,
                     const SeedBoxParams& params);

// Separable objectives run one fragment per dimension; non-separable ones
// fall through to joint_precondition.
PrecondResult precondition(const objectives::Objective& obj,
                           const PrecondConfig& cfg, std::uint64_t trial_seed);

// Single fragment over the concatenated dims*K register; rejected when the
// register would not fit the simulator (cross-register entanglement would
// need circuit knitting, which is out of scope).
PrecondResult joint_precondition(const objectives::Objective& obj,
                                 const PrecondConfig& cfg,
                                 std::uint64_t trial_seed);

}  // namespace qseed::precond
