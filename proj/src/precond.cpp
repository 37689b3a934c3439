#include "qseed/precond.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qseed/encoding.hpp"
#include "qseed/errors.hpp"
#include "qseed/qsim.hpp"
#include "qseed/rng.hpp"

namespace qseed::precond {

namespace {

// Stream tag separating fragment randomness from the refiner's (tag 2).
constexpr std::uint64_t kFragmentTag = 1;

encoding::DiscretizationGrid grid_for(const objectives::Objective& obj,
                                      int dim, int k_qubits) {
  const auto b = obj.bounds(dim);
  return encoding::DiscretizationGrid(b.lo, b.hi, k_qubits);
}

void check_register_width(int width) {
  if (width > qsim::kMaxQubits) {
    throw UnsupportedProblemError(
        "register of " + std::to_string(width) + " qubits exceeds the " +
        std::to_string(qsim::kMaxQubits) +
        "-qubit simulator; splitting a non-separable objective would need "
        "circuit knitting, which is out of scope");
  }
}

vqe::FragmentResult run_on(const encoding::DiagonalHamiltonian& h,
                           const PrecondConfig& cfg, std::uint64_t trial_seed,
                           std::uint64_t fragment_index) {
  vqe::AnsatzConfig ansatz;
  ansatz.n_qubits = h.total_width();
  ansatz.layers = cfg.layers;
  RngStream rng(mix_seed({trial_seed, kFragmentTag, fragment_index}));
  return vqe::run_fragment(h, ansatz, cfg.cvar, cfg.train, rng);
}

}  // namespace

vqe::FragmentResult run_dimension_fragment(const objectives::Objective& obj,
                                           int dim, const PrecondConfig& cfg,
                                           std::uint64_t trial_seed) {
  if (dim < 0 || dim >= obj.dims()) {
    throw std::invalid_argument("fragment dimension out of range");
  }
  if (!obj.separable()) {
    throw UnsupportedProblemError(
        "per-dimension fragments need a separable objective");
  }
  check_register_width(cfg.k_qubits);
  const auto grid = grid_for(obj, dim, cfg.k_qubits);
  const auto h = encoding::build_slice_diagonal(obj, dim, grid);
  return run_on(h, cfg, trial_seed, static_cast<std::uint64_t>(dim));
}

SeedBox assemble_box(const objectives::Objective& obj,
                     const std::vector<double>& x_best,
                     const std::vector<double>& x_cvar,
                     const std::vector<double>& rms,
                     const SeedBoxParams& params) {
  const auto n = static_cast<std::size_t>(obj.dims());
  if (x_best.size() != n || x_cvar.size() != n || rms.size() != n) {
    throw std::invalid_argument("seed box inputs must match objective dims");
  }
  SeedBox box;
  box.params = params;
  box.x_seed.resize(n);
  box.delta.resize(n);
  box.lb.resize(n);
  box.ub.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = obj.bounds(static_cast<int>(i));
    double seed = params.beta * x_best[i] + (1.0 - params.beta) * x_cvar[i];
    seed = std::clamp(seed, b.lo, b.hi);
    const double delta = params.delta_base + params.gamma * rms[i];
    box.x_seed[i] = seed;
    box.delta[i] = delta;
    box.lb[i] = std::max(b.lo, seed - delta);
    box.ub[i] = std::min(b.hi, seed + delta);
  }
  return box;
}

PrecondResult precondition(const objectives::Objective& obj,
                           const PrecondConfig& cfg,
                           std::uint64_t trial_seed) {
  if (!obj.separable()) {
    return joint_precondition(obj, cfg, trial_seed);
  }
  check_register_width(cfg.k_qubits);
  const auto n = static_cast<std::size_t>(obj.dims());
  PrecondResult result;
  result.fragments.reserve(n);
  std::vector<double> x_best(n);
  std::vector<double> x_cvar(n);
  std::vector<double> rms(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto frag =
        run_dimension_fragment(obj, static_cast<int>(i), cfg, trial_seed);
    x_best[i] = frag.x_best.at(0);
    x_cvar[i] = frag.x_cvar.at(0);
    rms[i] = frag.rms.at(0);
    result.fragments.push_back(std::move(frag));
  }
  result.box = assemble_box(obj, x_best, x_cvar, rms, cfg.box);
  return result;
}

PrecondResult joint_precondition(const objectives::Objective& obj,
                                 const PrecondConfig& cfg,
                                 std::uint64_t trial_seed) {
  check_register_width(cfg.k_qubits * obj.dims());
  std::vector<encoding::DiscretizationGrid> grids;
  grids.reserve(static_cast<std::size_t>(obj.dims()));
  for (int d = 0; d < obj.dims(); ++d) {
    grids.push_back(grid_for(obj, d, cfg.k_qubits));
  }
  const auto h = encoding::build_diagonal(obj, grids);
  PrecondResult result;
  result.fragments.push_back(run_on(h, cfg, trial_seed, 0));
  const auto& frag = result.fragments.front();
  result.box = assemble_box(obj, frag.x_best, frag.x_cvar, frag.rms, cfg.box);
  return result;
}

}  // namespace qseed::precond
