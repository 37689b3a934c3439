// Benchmark driver: runs seeded trial batteries of the hybrid
// quantum-preconditioned optimizer against the classical baseline and
// writes JSON/CSV reports plus box-plot data.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qseed/harness.hpp"
#include "qseed/objectives.hpp"
#include "qseed/report.hpp"

namespace {

// Deterministic domain geometry: full-domain volume and the number of
// lattice local minima for each landscape, D = 2..10.
void print_domain_table() {
  std::printf("objective,D,v_orig,minima_orig\n");
  for (const char* name : {"rastrigin", "ackley"}) {
    for (int dims = 2; dims <= 10; ++dims) {
      const auto obj = qseed::objectives::make_objective(name, dims);
      const auto metrics = qseed::harness::volume_metrics(*obj, {});
      std::printf("%s,%d,%.6g,%.6g\n", name, dims, metrics.v_orig,
                  metrics.minima_orig);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qseed: quantum-preconditioned swarm optimization benchmark harness"};
  app.set_config("--config", "", "Read options from a key=value file");

  qseed::harness::BatteryConfig cfg;
  std::vector<std::string> mode_names = {"hybrid", "classical"};
  std::string out_path = "report.json";
  std::string format_name = "json";
  bool no_timing = false;
  bool domain_table = false;

  app.add_option("--objective", cfg.objective,
                 "Objective: rastrigin, ackley, himmelblau")
      ->capture_default_str();
  app.add_option("--dims", cfg.dims_list, "Dimensionalities to run")
      ->capture_default_str();
  app.add_option("--qubits", cfg.k_qubits, "Qubits per encoded variable")
      ->capture_default_str();
  app.add_option("--layers", cfg.layers, "Ansatz entangling blocks")
      ->capture_default_str();
  app.add_option("--budget", cfg.budgets,
                 "Fragment training budgets (hybrid cells)")
      ->capture_default_str();
  app.add_option("--trials", cfg.trials, "Trials per repeat")
      ->capture_default_str();
  app.add_option("--repeats", cfg.repeats, "Independent repeats per cell")
      ->capture_default_str();
  app.add_option("--mode", mode_names, "Modes: hybrid and/or classical")
      ->capture_default_str();
  app.add_option("--particles", cfg.classical_particles,
                 "Classical baseline swarm size")
      ->capture_default_str();
  app.add_option("--hybrid-particles", cfg.hybrid_particles,
                 "Hybrid in-box swarm size")
      ->capture_default_str();
  app.add_option("--pso-iterations", cfg.pso_iterations,
                 "Hybrid in-box swarm iterations")
      ->capture_default_str();
  app.add_option("--classical-pso-iterations", cfg.classical_pso_iterations,
                 "Classical baseline swarm iterations")
      ->capture_default_str();
  app.add_option("--beta", cfg.beta, "Seed point weight on x_best")
      ->capture_default_str();
  app.add_option("--delta-base", cfg.delta_base, "Minimum box radius")
      ->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "Box radius per unit tail RMS")
      ->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "CVaR tail fraction")
      ->capture_default_str();
  app.add_option("--shots", cfg.shots, "Shots per circuit evaluation")
      ->capture_default_str();
  app.add_option("--seed", cfg.base_seed, "Base seed")
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Concurrent trial workers")
      ->capture_default_str();
  app.add_option("--out", out_path, "Report path")->capture_default_str();
  app.add_option("--format", format_name, "Report format: json or csv")
      ->capture_default_str();
  app.add_flag("--no-timing", no_timing,
               "Omit wall_time fields for byte-stable reports");
  app.add_flag("--domain-table", domain_table,
               "Print v_orig / minima_orig for both landscapes and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (domain_table) {
      print_domain_table();
      return 0;
    }
    cfg.include_timing = !no_timing;
    cfg.modes.clear();
    for (const auto& name : mode_names) {
      cfg.modes.push_back(qseed::harness::mode_from_string(name));
    }
    const auto format = qseed::report::format_from_string(format_name);

    const auto rep = qseed::harness::run_battery(cfg);
    for (const auto& cell : rep.cells) {
      std::printf("%s D=%d %s budget=%d:", cell.objective.c_str(), cell.dims,
                  qseed::harness::to_string(cell.mode).c_str(), cell.budget);
      for (int n : cell.n_correct) std::printf(" %d", n);
      std::printf(" / %d correct  pbest_in_basin=", cell.trials);
      for (std::size_t i = 0; i < cell.pbest_in_basin.size(); ++i) {
        std::printf("%s%lld", i ? " " : "", cell.pbest_in_basin[i]);
      }
      if (cell.volume.captured) {
        std::printf("  reduction=%.4g", cell.volume.reduction_factor);
      }
      std::printf("\n");
    }
    qseed::report::emit_report(rep, out_path, format);
    std::printf("report written to %s\n", out_path.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"error\": \"%s\"}\n", e.what());
    return 1;
  }
}
