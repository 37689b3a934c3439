#include "qseed/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "qseed/errors.hpp"
#include "qseed/qsim.hpp"
#include "qseed/rng.hpp"

namespace qseed::harness {

namespace {

// Stream tag for the refiner; fragments use tag 1 inside precond.
constexpr std::uint64_t kRefineTag = 2;

// Type-7 quantile (linear interpolation), the numpy/R default.
double quantile(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::string to_string(Mode mode) {
  return mode == Mode::kHybrid ? "hybrid" : "classical";
}

Mode mode_from_string(const std::string& text) {
  if (text == "hybrid") return Mode::kHybrid;
  if (text == "classical") return Mode::kClassical;
  throw std::invalid_argument("unknown mode: " + text);
}

FiveNumberSummary summarize(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("cannot summarize an empty sample");
  }
  std::sort(values.begin(), values.end());
  FiveNumberSummary s;
  s.n = values.size();
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile(values, 0.25);
  s.median = quantile(values, 0.5);
  s.q3 = quantile(values, 0.75);
  const double iqr = s.q3 - s.q1;
  const double fence_lo = s.q1 - 1.5 * iqr;
  const double fence_hi = s.q3 + 1.5 * iqr;
  // Whiskers sit on the outermost data points inside the fences.
  s.whisker_lo = s.max;
  s.whisker_hi = s.min;
  for (double v : values) {
    if (v >= fence_lo) {
      s.whisker_lo = std::min(s.whisker_lo, v);
    }
    if (v <= fence_hi) {
      s.whisker_hi = std::max(s.whisker_hi, v);
    }
    if (v < fence_lo || v > fence_hi) {
      s.outliers.push_back(v);
    }
  }
  return s;
}

VolumeMetrics volume_metrics(const objectives::Objective& obj,
                             const std::vector<TrialRecord>& records) {
  const auto n = static_cast<std::size_t>(obj.dims());
  VolumeMetrics m;
  m.v_orig = 1.0;
  m.minima_orig = obj.has_minima_lattice() ? 1.0 : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = obj.bounds(static_cast<int>(i));
    m.v_orig *= b.width();
    if (obj.has_minima_lattice()) {
      m.minima_orig *= static_cast<double>(
          obj.count_lattice_minima(static_cast<int>(i), b.lo, b.hi));
    }
  }
  // The preconditioned volume is the worst case over the batch: among the
  // trial boxes that captured a global minimizer, keep the one with the
  // largest volume. Aggregating any other way (an envelope across trials,
  // say) would measure the spread of 100 boxes, not how tight a single
  // capturing box gets.
  const auto captures = [&](const precond::SeedBox& box) {
    for (const auto& gm : obj.global_minima()) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) {
        inside = box.lb[i] <= gm[i] && gm[i] <= box.ub[i];
      }
      if (inside) return true;
    }
    return false;
  };
  double worst_volume = 0.0;
  for (const auto& rec : records) {
    if (rec.mode != Mode::kHybrid || !rec.box.has_value() ||
        !captures(*rec.box)) {
      continue;
    }
    double volume = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      volume *= rec.box->ub[i] - rec.box->lb[i];
    }
    if (!m.captured || volume > worst_volume) {
      m.captured = true;
      worst_volume = volume;
      m.lb = rec.box->lb;
      m.ub = rec.box->ub;
    }
  }
  if (!m.captured) {
    return m;  // no capturing box: v_pre/minima_pre stay zero
  }
  m.v_pre = worst_volume;
  m.minima_pre = obj.has_minima_lattice() ? 1.0 : 0.0;
  for (std::size_t i = 0; i < n && obj.has_minima_lattice(); ++i) {
    m.minima_pre *= static_cast<double>(
        obj.count_lattice_minima(static_cast<int>(i), m.lb[i], m.ub[i]));
  }
  m.reduction_factor = m.v_orig / m.v_pre;
  return m;
}

std::uint64_t trial_seed(std::uint64_t base_seed, const std::string& objective,
                         int dims, int trial_index) {
  return mix_seed({base_seed, hash_name(objective),
                   static_cast<std::uint64_t>(dims),
                   static_cast<std::uint64_t>(trial_index)});
}

TrialRecord run_trial(const objectives::Objective& obj, Mode mode,
                      int trial_index, int budget, const BatteryConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial_id = trial_index;
  rec.mode = mode;
  rec.objective = obj.name();
  rec.dims = obj.dims();
  rec.seed = trial_seed(cfg.base_seed, obj.name(), obj.dims(), trial_index);

  refine::RefineConfig rcfg;
  rcfg.pso.iterations = cfg.pso_iterations;
  rcfg.bfgs_grad_tol = cfg.bfgs_grad_tol;
  rcfg.bfgs_max_iterations = cfg.bfgs_max_iterations;

  precond::SeedBox box;
  if (mode == Mode::kHybrid) {
    rec.k_qubits = cfg.k_qubits;
    rec.budget = budget;
    precond::PrecondConfig pcfg;
    pcfg.k_qubits = cfg.k_qubits;
    pcfg.layers = cfg.layers;
    pcfg.cvar.shots = cfg.shots;
    pcfg.cvar.alpha = cfg.alpha;
    pcfg.train.max_evals = budget;
    pcfg.train.rho_begin = cfg.rho_begin;
    pcfg.train.rho_end = cfg.rho_end;
    pcfg.box.beta = cfg.beta;
    pcfg.box.delta_base = cfg.delta_base;
    pcfg.box.gamma = cfg.gamma;
    box = precond::precondition(obj, pcfg, rec.seed).box;
    rec.box = box;
    rcfg.pso.particles = cfg.hybrid_particles;
  } else {
    // Cold start: the swarm searches the whole domain.
    const auto n = static_cast<std::size_t>(obj.dims());
    box.x_seed.resize(n);
    box.delta.resize(n);
    box.lb.resize(n);
    box.ub.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto b = obj.bounds(static_cast<int>(i));
      box.x_seed[i] = 0.5 * (b.lo + b.hi);
      box.delta[i] = 0.5 * b.width();
      box.lb[i] = b.lo;
      box.ub[i] = b.hi;
    }
    rcfg.pso.particles = cfg.classical_particles;
    rcfg.pso.iterations = cfg.classical_pso_iterations;
    // No seed point in this mode; the box center is not information.
    rcfg.warm_start = false;
  }

  RngStream rng(mix_seed({rec.seed, kRefineTag}));
  const auto ref = refine::refine(obj, box, rcfg, rng);
  rec.x_final = ref.x_final;
  rec.f_final = ref.f_final;
  rec.bfgs_iterations = ref.bfgs_iterations;
  rec.pbest_in_basin = ref.pbest_in_basin;
  rec.correct = obj.in_global_basin(rec.x_final);
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return rec;
}

namespace {

struct Cell {
  int dims = 0;
  Mode mode = Mode::kHybrid;
  int budget = 0;  // 0 in classical mode
};

void validate_config(const BatteryConfig& cfg) {
  const auto fail = [](const std::string& what) {
    throw std::invalid_argument("battery config: " + what);
  };
  if (cfg.trials < 0) fail("trials must be >= 0");
  if (cfg.repeats < 1) fail("repeats must be >= 1");
  if (cfg.shots < 1) fail("shots must be >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) fail("alpha must be in (0, 1]");
  if (cfg.k_qubits < 1) fail("qubits per variable must be >= 1");
  if (cfg.layers < 1) fail("ansatz layers must be >= 1");
  if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0)) fail("beta must be in [0, 1]");
  if (cfg.delta_base < 0.0 || cfg.gamma < 0.0) {
    fail("delta_base and gamma must be >= 0");
  }
  if (!(cfg.rho_end > 0.0 && cfg.rho_end < cfg.rho_begin)) {
    fail("need 0 < rho_end < rho_begin");
  }
  if (cfg.hybrid_particles < 1 || cfg.classical_particles < 1) {
    fail("particle counts must be >= 1");
  }
  if (cfg.pso_iterations < 0 || cfg.classical_pso_iterations < 0) {
    fail("swarm iterations must be >= 0");
  }
  if (cfg.bfgs_max_iterations < 0) fail("bfgs iteration cap must be >= 0");
  if (cfg.jobs < 1) fail("jobs must be >= 1");
  if (cfg.modes.empty()) fail("at least one mode required");

  const bool wants_hybrid =
      std::find(cfg.modes.begin(), cfg.modes.end(), Mode::kHybrid) !=
      cfg.modes.end();
  if (wants_hybrid && cfg.budgets.empty()) {
    fail("hybrid mode needs at least one budget");
  }
  for (int dims : cfg.dims_list) {
    if (dims < 1) fail("dims must be >= 1");
    // Surfaces unknown names and dimensionality mismatches now.
    const auto obj = objectives::make_objective(cfg.objective, dims);
    if (!wants_hybrid) continue;
    const int width =
        obj->separable() ? cfg.k_qubits : cfg.k_qubits * obj->dims();
    if (width > qsim::kMaxQubits) {
      throw UnsupportedProblemError(
          "register of " + std::to_string(width) + " qubits exceeds the " +
          std::to_string(qsim::kMaxQubits) + "-qubit simulator");
    }
    const int n_params = width * cfg.layers;
    for (int budget : cfg.budgets) {
      if (budget < n_params + 2) {
        fail("budget " + std::to_string(budget) + " below the " +
             std::to_string(n_params + 2) + " evaluations the " +
             std::to_string(n_params) + "-parameter ansatz needs");
      }
    }
  }
}

}  // namespace

BatteryReport run_battery(const BatteryConfig& cfg) {
  validate_config(cfg);

  std::vector<Cell> cells;
  for (int dims : cfg.dims_list) {
    for (Mode mode : cfg.modes) {
      if (mode == Mode::kHybrid) {
        for (int budget : cfg.budgets) {
          cells.push_back({dims, mode, budget});
        }
      } else {
        cells.push_back({dims, mode, 0});
      }
    }
  }

  std::vector<std::unique_ptr<objectives::Objective>> cell_obj;
  cell_obj.reserve(cells.size());
  for (const auto& cell : cells) {
    cell_obj.push_back(objectives::make_objective(cfg.objective, cell.dims));
  }

  const auto per_cell = static_cast<std::size_t>(cfg.trials) *
                        static_cast<std::size_t>(cfg.repeats);
  std::vector<std::vector<TrialRecord>> slots(cells.size());
  for (auto& s : slots) s.resize(per_cell);

  struct Unit {
    std::size_t cell;
    int trial;  // global index: repeat * trials + trial-in-repeat
  };
  std::vector<Unit> units;
  units.reserve(cells.size() * per_cell);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t t = 0; t < per_cell; ++t) {
      units.push_back({c, static_cast<int>(t)});
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= units.size()) return;
      const Unit u = units[i];
      try {
        slots[u.cell][static_cast<std::size_t>(u.trial)] =
            run_trial(*cell_obj[u.cell], cells[u.cell].mode, u.trial,
                      cells[u.cell].budget, cfg);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const std::size_t n_workers = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.jobs), std::max<std::size_t>(units.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  BatteryReport report;
  report.config = cfg;
  report.cells.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellReport cell;
    cell.objective = cfg.objective;
    cell.dims = cells[c].dims;
    cell.mode = cells[c].mode;
    cell.k_qubits = cells[c].mode == Mode::kHybrid ? cfg.k_qubits : 0;
    cell.budget = cells[c].budget;
    cell.trials = cfg.trials;
    cell.repeats = cfg.repeats;
    cell.records = std::move(slots[c]);

    cell.n_correct.resize(static_cast<std::size_t>(cfg.repeats), 0);
    cell.pbest_in_basin.resize(static_cast<std::size_t>(cfg.repeats), 0);
    std::vector<double> bfgs_all;
    std::vector<double> bfgs_correct;
    for (const auto& rec : cell.records) {
      const auto repeat = static_cast<std::size_t>(rec.trial_id / cfg.trials);
      if (rec.correct) ++cell.n_correct[repeat];
      cell.pbest_in_basin[repeat] += rec.pbest_in_basin;
      bfgs_all.push_back(static_cast<double>(rec.bfgs_iterations));
      if (rec.correct) {
        bfgs_correct.push_back(static_cast<double>(rec.bfgs_iterations));
      }
    }
    std::vector<double> n_correct_vals(cell.n_correct.begin(),
                                       cell.n_correct.end());
    cell.n_correct_summary = summarize(std::move(n_correct_vals));
    if (!bfgs_all.empty()) {
      cell.bfgs_all_summary = summarize(std::move(bfgs_all));
    }
    if (!bfgs_correct.empty()) {
      cell.bfgs_correct_summary = summarize(std::move(bfgs_correct));
    }
    cell.volume = volume_metrics(*cell_obj[c], cell.records);
    report.cells.push_back(std::move(cell));
  }
  return report;
}

}  // namespace qseed::harness
