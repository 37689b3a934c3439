#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qseed/objectives.hpp"
#include "qseed/precond.hpp"
#include "qseed/refine.hpp"

namespace qseed::harness {

enum class Mode { kHybrid, kClassical };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& text);

// One optimization run. k_qubits and budget are 0 in classical mode, and
// box is only present for hybrid runs.
struct TrialRecord {
  int trial_id = 0;
  Mode mode = Mode::kHybrid;
  std::string objective;
  int dims = 0;
  int k_qubits = 0;
  int budget = 0;
  std::uint64_t seed = 0;
  std::vector<double> x_final;
  double f_final = 0.0;
  bool correct = false;
  int bfgs_iterations = 0;
  // Swarm members whose personal best landed in the global basin; the
  // per-particle analogue of `correct` with a much wider dynamic range.
  int pbest_in_basin = 0;
  std::optional<precond::SeedBox> box;
  double wall_time = 0.0;  // seconds, excluded from the comparison canon
};

// Box-plot statistics: type-7 quantiles, whiskers at the outermost data
// points within 1.5x IQR of the quartiles, everything beyond listed as
// outliers.
struct FiveNumberSummary {
  std::size_t n = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double whisker_lo = 0.0;
  double whisker_hi = 0.0;
  std::vector<double> outliers;
};

FiveNumberSummary summarize(std::vector<double> values);

// Worst-case capturing box: the largest-volume trial box that still
// contains a global minimizer. lb/ub are that box's bounds; minima counts
// are 0 for objectives without an integer minima lattice.
struct VolumeMetrics {
  bool captured = false;
  double v_orig = 0.0;
  double v_pre = 0.0;
  double reduction_factor = 0.0;
  double minima_orig = 0.0;
  double minima_pre = 0.0;
  std::vector<double> lb;
  std::vector<double> ub;
};

VolumeMetrics volume_metrics(const objectives::Objective& obj,
                             const std::vector<TrialRecord>& records);

struct BatteryConfig {
  std::string objective = "rastrigin";
  std::vector<int> dims_list = {2};
  int k_qubits = 5;
  int layers = 3;
  std::vector<int> budgets = {8000};
  std::vector<Mode> modes = {Mode::kHybrid, Mode::kClassical};
  int trials = 100;
  int repeats = 1;
  std::uint64_t base_seed = 42;
  int shots = 1000;
  double alpha = 0.1;
  double beta = 0.7;
  double delta_base = 0.5;
  double gamma = 2.0;
  double rho_begin = 0.5;
  double rho_end = 1e-4;
  int hybrid_particles = 256;
  int classical_particles = 10000;
  int pso_iterations = 200;
  // The baseline leans on initialization density, not long swarm runs: a
  // short horizon keeps each particle near its own basin of attraction.
  int classical_pso_iterations = 50;
  double bfgs_grad_tol = 1e-8;
  int bfgs_max_iterations = 500;
  int jobs = 1;
  bool include_timing = true;
};

// One configuration cell: every mode/budget combination of one objective
// at one dimensionality, run trials x repeats times. records are ordered
// by trial_id; repeat r owns trial_ids [r*trials, (r+1)*trials).
struct CellReport {
  std::string objective;
  int dims = 0;
  Mode mode = Mode::kHybrid;
  int k_qubits = 0;
  int budget = 0;
  int trials = 0;
  int repeats = 0;
  std::vector<int> n_correct;            // one entry per repeat
  std::vector<long long> pbest_in_basin;  // per repeat, summed over trials
  std::optional<FiveNumberSummary> n_correct_summary;
  std::optional<FiveNumberSummary> bfgs_all_summary;
  std::optional<FiveNumberSummary> bfgs_correct_summary;
  VolumeMetrics volume;
  std::vector<TrialRecord> records;
};

struct BatteryReport {
  BatteryConfig config;
  std::vector<CellReport> cells;
};

// Trial seeds depend on objective, dimensionality and trial index only, so
// hybrid/classical and different budgets see identical seeds: the modes
// are paired sample-for-sample.
std::uint64_t trial_seed(std::uint64_t base_seed, const std::string& objective,
                         int dims, int trial_index);

TrialRecord run_trial(const objectives::Objective& obj, Mode mode,
                      int trial_index, int budget, const BatteryConfig& cfg);

// Validates the whole configuration before any work, then executes every
// (cell, trial) unit, concurrently up to cfg.jobs. Determinism is carried
// entirely by the per-trial seeds, never by scheduling.
BatteryReport run_battery(const BatteryConfig& cfg);

}  // namespace qseed::harness
