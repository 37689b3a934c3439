#pragma once

#include <functional>
#include <vector>

namespace qseed::gradfree {

struct GradFreeConfig {
  int max_evals = 200;
  double rho_begin = 0.5;
  double rho_end = 1e-4;
  // Optional box constraints; empty means unconstrained.
  std::vector<double> lower;
  std::vector<double> upper;
};

enum class Termination { budget, radius };

struct GradFreeResult {
  std::vector<double> x_opt;
  double f_opt = 0.0;
  int evals_used = 0;
  Termination terminated_by = Termination::budget;
};

// Derivative-free trust-region minimization in the COBYLA mold: a simplex
// of dim+1 interpolation points carries a linear model of f; steepest
// model-descent steps of length rho are taken, the simplex geometry is
// repaired when it degenerates, and rho shrinks from rho_begin to rho_end.
// Deterministic: identical (f, x0, cfg) give identical traces. Never calls
// f more than cfg.max_evals times. Non-finite f values abort with
// NonFiniteValueError.
GradFreeResult minimize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const GradFreeConfig& cfg);

}  // namespace qseed::gradfree
