#include "qseed/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qseed::vqe {

void apply_ansatz(const AnsatzConfig& cfg, const std::vector<double>& theta,
                  qsim::StateVector& state) {
  const int n = cfg.n_qubits;
  if (state.n_qubits() != n)
    throw std::invalid_argument("state width does not match ansatz");
  if (static_cast<int>(theta.size()) != cfg.parameter_count())
    throw std::invalid_argument("theta length must be n_qubits * layers");
  state.reset();
  for (int q = 0; q < n; ++q) state.apply_h(q);
  for (int block = 0; block < cfg.layers; ++block) {
    for (int q = 0; q < n; ++q) state.apply_ry(q, theta[block * n + q]);
    if (n >= 2) {
      for (int q = 0; q + 1 < n; ++q) state.apply_cnot(q, q + 1);
      state.apply_cnot(n - 1, 0);
    }
  }
}

qsim::StateVector build_ansatz(const AnsatzConfig& cfg,
                               const std::vector<double>& theta) {
  qsim::StateVector state(cfg.n_qubits);
  apply_ansatz(cfg, theta, state);
  return state;
}

std::uint64_t CVaRConfig::tail_size() const {
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must lie in (0, 1]");
  const auto t = static_cast<std::uint64_t>(
      std::ceil(alpha * static_cast<double>(shots)));
  return std::min(std::max<std::uint64_t>(t, 1), shots);
}

std::vector<TailSample> cvar_tail(const encoding::DiagonalHamiltonian& h,
                                  const qsim::ShotHistogram& hist,
                                  const CVaRConfig& cfg) {
  if (hist.total_shots != cfg.shots)
    throw std::invalid_argument("histogram shot count does not match config");
  struct Entry {
    std::uint64_t basis;
    double energy;
    std::uint64_t count;
  };
  std::vector<Entry> entries;
  entries.reserve(hist.counts.size());
  for (const auto& [basis, count] : hist.counts)
    entries.push_back({basis, h.energy(basis), count});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.basis < b.basis;
  });

  // Find the cutoff energy: the energy of the tail_size-th lowest shot.
  const std::uint64_t tail_size = cfg.tail_size();
  double cutoff = entries.back().energy;
  std::uint64_t seen = 0;
  for (const Entry& e : entries) {
    seen += e.count;
    if (seen >= tail_size) {
      cutoff = e.energy;
      break;
    }
  }

  std::uint64_t below = 0;   // shots strictly under the cutoff
  std::uint64_t at = 0;      // shots exactly at the cutoff
  for (const Entry& e : entries) {
    if (e.energy < cutoff) below += e.count;
    if (e.energy == cutoff) at += e.count;
  }
  const auto need = static_cast<double>(tail_size - below);

  std::vector<TailSample> tail;
  for (const Entry& e : entries) {
    if (e.energy > cutoff) break;
    TailSample t{e.basis, e.energy, static_cast<double>(e.count)};
    if (e.energy == cutoff) {
      t.weight = need * static_cast<double>(e.count) / static_cast<double>(at);
    }
    tail.push_back(t);
  }
  return tail;
}

double cvar_energy(const encoding::DiagonalHamiltonian& h,
                   const qsim::ShotHistogram& hist, const CVaRConfig& cfg) {
  double sum = 0.0;
  for (const TailSample& t : cvar_tail(h, hist, cfg)) sum += t.energy * t.weight;
  return sum / static_cast<double>(cfg.tail_size());
}

namespace {

// Keeps the lexicographically smallest (energy, basis) pair seen.
struct BestShot {
  double energy = std::numeric_limits<double>::infinity();
  std::uint64_t basis = 0;

  void offer(const encoding::DiagonalHamiltonian& h,
             const qsim::ShotHistogram& hist) {
    for (const auto& [basis_state, count] : hist.counts) {
      (void)count;
      const double e = h.energy(basis_state);
      if (e < energy || (e == energy && basis_state < basis)) {
        energy = e;
        basis = basis_state;
      }
    }
  }
};

}  // namespace

FragmentResult run_fragment(const encoding::DiagonalHamiltonian& h,
                            const AnsatzConfig& acfg, const CVaRConfig& ccfg,
                            const gradfree::GradFreeConfig& gcfg,
                            RngStream& rng) {
  if (h.total_width() != acfg.n_qubits)
    throw std::invalid_argument("register width does not match ansatz");

  qsim::StateVector state(acfg.n_qubits);
  qsim::Sampler sampler;
  BestShot best;
  std::vector<double> trace;

  auto objective = [&](const std::vector<double>& theta) {
    apply_ansatz(acfg, theta, state);
    const qsim::ShotHistogram hist = sampler.sample(state, ccfg.shots, rng);
    best.offer(h, hist);
    const double cvar = cvar_energy(h, hist, ccfg);
    trace.push_back(cvar);
    return cvar;
  };

  // The trust region collapses long before a large budget is spent (the
  // sampled CVaR is noisy, so the radius schedule bottoms out after a few
  // hundred evaluations). Restarting from the best parameters found keeps
  // the optimizer exploring until the budget is gone, which is what makes
  // a bigger budget buy a sharper final distribution.
  const int min_round = acfg.parameter_count() + 2;
  std::vector<double> theta_opt(acfg.parameter_count(), 0.0);
  double cvar_opt = std::numeric_limits<double>::infinity();
  int evals_total = 0;
  while (gcfg.max_evals - evals_total >= min_round) {
    gradfree::GradFreeConfig round = gcfg;
    round.max_evals = gcfg.max_evals - evals_total;
    const gradfree::GradFreeResult train =
        gradfree::minimize(objective, theta_opt, round);
    evals_total += train.evals_used;
    if (train.f_opt < cvar_opt) {
      cvar_opt = train.f_opt;
      theta_opt = train.x_opt;
    }
    if (train.terminated_by == gradfree::Termination::budget ||
        train.evals_used == 0) {
      break;
    }
  }

  // One fresh histogram at the trained parameters; the tail statistics
  // come from here, not from the noisy training trace.
  apply_ansatz(acfg, theta_opt, state);
  qsim::ShotHistogram final_hist = sampler.sample(state, ccfg.shots, rng);
  best.offer(h, final_hist);

  const std::vector<TailSample> tail = cvar_tail(h, final_hist, ccfg);
  const auto dims = h.grids().size();
  const double tail_total = static_cast<double>(ccfg.tail_size());

  std::vector<double> centroid(dims, 0.0);
  for (const TailSample& t : tail) {
    const std::vector<double> x = h.decode_coords(t.basis);
    for (std::size_t i = 0; i < dims; ++i) centroid[i] += t.weight * x[i];
  }
  for (double& c : centroid) c /= tail_total;

  std::vector<double> rms(dims, 0.0);
  for (const TailSample& t : tail) {
    const std::vector<double> x = h.decode_coords(t.basis);
    for (std::size_t i = 0; i < dims; ++i) {
      const double d = x[i] - centroid[i];
      rms[i] += t.weight * d * d;
    }
  }
  for (double& r : rms) r = std::sqrt(r / tail_total);

  FragmentResult out;
  out.x_best = h.decode_coords(best.basis);
  out.e_best = best.energy;
  out.x_cvar = std::move(centroid);
  out.rms = std::move(rms);
  out.final_histogram = std::move(final_hist);
  out.cvar_trace = std::move(trace);
  out.evals_used = evals_total;
  return out;
}

}  // namespace qseed::vqe
