#pragma once

#include <vector>

#include "qseed/objectives.hpp"
#include "qseed/precond.hpp"
#include "qseed/rng.hpp"

namespace qseed::refine {

struct PsoConfig {
  int particles = 256;
  int iterations = 200;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  // Per-dimension speed limit as a fraction of the search box width.
  double velocity_clamp = 0.5;
};

struct PsoResult {
  std::vector<double> x_best;
  double f_best = 0.0;
  long long evals = 0;
  std::vector<std::vector<double>> personal_bests;  // one per particle
};

// Global-best PSO with absorbing walls. Particles draw positions then
// velocities dimension by dimension from rng; the swarm best updates once
// per iteration so the result is independent of particle storage order.
// When warm_start is given, particle 0 starts there (clamped to the box)
// instead of at its drawn position; the rng draw sequence is unchanged, so
// warm and cold runs stay stream-compatible.
PsoResult pso(const objectives::Objective& obj, const std::vector<double>& lb,
              const std::vector<double>& ub, const PsoConfig& cfg,
              RngStream& rng, const std::vector<double>* warm_start = nullptr);

struct BfgsResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;  // accepted line-search steps
  bool converged = false;
};

// Quasi-Newton descent with Armijo backtracking, unconstrained. Throws
// NotDifferentiableError when the objective has no gradient.
BfgsResult bfgs(const objectives::Objective& obj,
                const std::vector<double>& x0, double grad_tol = 1e-8,
                int max_iterations = 500);

struct RefineConfig {
  PsoConfig pso;
  // Seed the swarm at box.x_seed. Off for baselines whose "box" is the whole
  // domain and whose center would leak the answer on symmetric landscapes.
  bool warm_start = true;
  double bfgs_grad_tol = 1e-8;
  int bfgs_max_iterations = 500;
};

struct RefineResult {
  std::vector<double> x_final;
  double f_final = 0.0;
  int bfgs_iterations = 0;
  long long pso_evals = 0;
  // How many swarm members' personal bests ended inside the objective's
  // global basin. Counts particles, not trials, so it keeps a wide dynamic
  // range where the per-trial success rate saturates at 0 or 1.
  int pbest_in_basin = 0;
};

// PSO inside the seed box, then (for differentiable objectives) BFGS from
// the swarm best without box constraints: a best that sits on the box wall
// may still descend into a minimum just outside. Warm-started runs also
// polish the seed point itself and keep the better landing, so the result
// never ends in a worse basin than the seed's own.
RefineResult refine(const objectives::Objective& obj,
                    const precond::SeedBox& box, const RefineConfig& cfg,
                    RngStream& rng);

}  // namespace qseed::refine
