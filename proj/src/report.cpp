#include "qseed/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace qseed::report {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buf, res.ptr);
}

json summary_to_json(const harness::FiveNumberSummary& s) {
  return json{{"n", s.n},
              {"min", s.min},
              {"q1", s.q1},
              {"median", s.median},
              {"q3", s.q3},
              {"max", s.max},
              {"whisker_lo", s.whisker_lo},
              {"whisker_hi", s.whisker_hi},
              {"outliers", s.outliers}};
}

harness::FiveNumberSummary summary_from_json(const json& j) {
  harness::FiveNumberSummary s;
  s.n = j.at("n").get<std::size_t>();
  s.min = j.at("min").get<double>();
  s.q1 = j.at("q1").get<double>();
  s.median = j.at("median").get<double>();
  s.q3 = j.at("q3").get<double>();
  s.max = j.at("max").get<double>();
  s.whisker_lo = j.at("whisker_lo").get<double>();
  s.whisker_hi = j.at("whisker_hi").get<double>();
  s.outliers = j.at("outliers").get<std::vector<double>>();
  return s;
}

json box_to_json(const precond::SeedBox& b) {
  return json{{"x_seed", b.x_seed}, {"delta", b.delta},
              {"lb", b.lb},         {"ub", b.ub},
              {"beta", b.params.beta}, {"delta_base", b.params.delta_base},
              {"gamma", b.params.gamma}};
}

precond::SeedBox box_from_json(const json& j) {
  precond::SeedBox b;
  b.x_seed = j.at("x_seed").get<std::vector<double>>();
  b.delta = j.at("delta").get<std::vector<double>>();
  b.lb = j.at("lb").get<std::vector<double>>();
  b.ub = j.at("ub").get<std::vector<double>>();
  b.params.beta = j.at("beta").get<double>();
  b.params.delta_base = j.at("delta_base").get<double>();
  b.params.gamma = j.at("gamma").get<double>();
  return b;
}

json record_to_json(const harness::TrialRecord& rec, bool include_timing) {
  json j{{"trial_id", rec.trial_id},
         {"mode", harness::to_string(rec.mode)},
         {"objective", rec.objective},
         {"dims", rec.dims},
         {"k_qubits", rec.k_qubits},
         {"budget", rec.budget},
         {"seed", rec.seed},
         {"x_final", rec.x_final},
         {"f_final", rec.f_final},
         {"correct", rec.correct},
         {"bfgs_iterations", rec.bfgs_iterations},
         {"pbest_in_basin", rec.pbest_in_basin}};
  if (rec.box.has_value()) j["box"] = box_to_json(*rec.box);
  if (include_timing) j["wall_time"] = rec.wall_time;
  return j;
}

harness::TrialRecord record_from_json(const json& j) {
  harness::TrialRecord rec;
  rec.trial_id = j.at("trial_id").get<int>();
  rec.mode = harness::mode_from_string(j.at("mode").get<std::string>());
  rec.objective = j.at("objective").get<std::string>();
  rec.dims = j.at("dims").get<int>();
  rec.k_qubits = j.at("k_qubits").get<int>();
  rec.budget = j.at("budget").get<int>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  rec.x_final = j.at("x_final").get<std::vector<double>>();
  rec.f_final = j.at("f_final").get<double>();
  rec.correct = j.at("correct").get<bool>();
  rec.bfgs_iterations = j.at("bfgs_iterations").get<int>();
  rec.pbest_in_basin = j.at("pbest_in_basin").get<int>();
  if (j.contains("box")) rec.box = box_from_json(j.at("box"));
  if (j.contains("wall_time")) rec.wall_time = j.at("wall_time").get<double>();
  return rec;
}

json volume_to_json(const harness::VolumeMetrics& m) {
  return json{{"captured", m.captured},
              {"v_orig", m.v_orig},
              {"v_pre", m.v_pre},
              {"reduction_factor", m.reduction_factor},
              {"minima_orig", m.minima_orig},
              {"minima_pre", m.minima_pre},
              {"lb", m.lb},
              {"ub", m.ub}};
}

harness::VolumeMetrics volume_from_json(const json& j) {
  harness::VolumeMetrics m;
  m.captured = j.at("captured").get<bool>();
  m.v_orig = j.at("v_orig").get<double>();
  m.v_pre = j.at("v_pre").get<double>();
  m.reduction_factor = j.at("reduction_factor").get<double>();
  m.minima_orig = j.at("minima_orig").get<double>();
  m.minima_pre = j.at("minima_pre").get<double>();
  m.lb = j.at("lb").get<std::vector<double>>();
  m.ub = j.at("ub").get<std::vector<double>>();
  return m;
}

json config_to_json(const harness::BatteryConfig& c) {
  json modes = json::array();
  for (auto m : c.modes) modes.push_back(harness::to_string(m));
  return json{{"objective", c.objective},
              {"dims_list", c.dims_list},
              {"k_qubits", c.k_qubits},
              {"layers", c.layers},
              {"budgets", c.budgets},
              {"modes", modes},
              {"trials", c.trials},
              {"repeats", c.repeats},
              {"base_seed", c.base_seed},
              {"shots", c.shots},
              {"alpha", c.alpha},
              {"beta", c.beta},
              {"delta_base", c.delta_base},
              {"gamma", c.gamma},
              {"rho_begin", c.rho_begin},
              {"rho_end", c.rho_end},
              {"hybrid_particles", c.hybrid_particles},
              {"classical_particles", c.classical_particles},
              {"pso_iterations", c.pso_iterations},
              {"classical_pso_iterations", c.classical_pso_iterations},
              {"bfgs_grad_tol", c.bfgs_grad_tol},
              {"bfgs_max_iterations", c.bfgs_max_iterations},
              {"jobs", c.jobs},
              {"include_timing", c.include_timing}};
}

harness::BatteryConfig config_from_json(const json& j) {
  harness::BatteryConfig c;
  c.objective = j.at("objective").get<std::string>();
  c.dims_list = j.at("dims_list").get<std::vector<int>>();
  c.k_qubits = j.at("k_qubits").get<int>();
  c.layers = j.at("layers").get<int>();
  c.budgets = j.at("budgets").get<std::vector<int>>();
  c.modes.clear();
  for (const auto& m : j.at("modes")) {
    c.modes.push_back(harness::mode_from_string(m.get<std::string>()));
  }
  c.trials = j.at("trials").get<int>();
  c.repeats = j.at("repeats").get<int>();
  c.base_seed = j.at("base_seed").get<std::uint64_t>();
  c.shots = j.at("shots").get<int>();
  c.alpha = j.at("alpha").get<double>();
  c.beta = j.at("beta").get<double>();
  c.delta_base = j.at("delta_base").get<double>();
  c.gamma = j.at("gamma").get<double>();
  c.rho_begin = j.at("rho_begin").get<double>();
  c.rho_end = j.at("rho_end").get<double>();
  c.hybrid_particles = j.at("hybrid_particles").get<int>();
  c.classical_particles = j.at("classical_particles").get<int>();
  c.pso_iterations = j.at("pso_iterations").get<int>();
  c.classical_pso_iterations = j.at("classical_pso_iterations").get<int>();
  c.bfgs_grad_tol = j.at("bfgs_grad_tol").get<double>();
  c.bfgs_max_iterations = j.at("bfgs_max_iterations").get<int>();
  c.jobs = j.at("jobs").get<int>();
  c.include_timing = j.at("include_timing").get<bool>();
  return c;
}

json cell_to_json(const harness::CellReport& cell, bool include_timing) {
  json records = json::array();
  for (const auto& rec : cell.records) {
    records.push_back(record_to_json(rec, include_timing));
  }
  json j{{"objective", cell.objective},
         {"dims", cell.dims},
         {"mode", harness::to_string(cell.mode)},
         {"k_qubits", cell.k_qubits},
         {"budget", cell.budget},
         {"trials", cell.trials},
         {"repeats", cell.repeats},
         {"n_correct", cell.n_correct},
         {"pbest_in_basin", cell.pbest_in_basin},
         {"volume", volume_to_json(cell.volume)},
         {"records", records}};
  if (cell.n_correct_summary) {
    j["n_correct_summary"] = summary_to_json(*cell.n_correct_summary);
  }
  if (cell.bfgs_all_summary) {
    j["bfgs_all_summary"] = summary_to_json(*cell.bfgs_all_summary);
  }
  if (cell.bfgs_correct_summary) {
    j["bfgs_correct_summary"] = summary_to_json(*cell.bfgs_correct_summary);
  }
  return j;
}

harness::CellReport cell_from_json(const json& j) {
  harness::CellReport cell;
  cell.objective = j.at("objective").get<std::string>();
  cell.dims = j.at("dims").get<int>();
  cell.mode = harness::mode_from_string(j.at("mode").get<std::string>());
  cell.k_qubits = j.at("k_qubits").get<int>();
  cell.budget = j.at("budget").get<int>();
  cell.trials = j.at("trials").get<int>();
  cell.repeats = j.at("repeats").get<int>();
  cell.n_correct = j.at("n_correct").get<std::vector<int>>();
  cell.pbest_in_basin = j.at("pbest_in_basin").get<std::vector<long long>>();
  cell.volume = volume_from_json(j.at("volume"));
  for (const auto& r : j.at("records")) {
    cell.records.push_back(record_from_json(r));
  }
  if (j.contains("n_correct_summary")) {
    cell.n_correct_summary = summary_from_json(j.at("n_correct_summary"));
  }
  if (j.contains("bfgs_all_summary")) {
    cell.bfgs_all_summary = summary_from_json(j.at("bfgs_all_summary"));
  }
  if (j.contains("bfgs_correct_summary")) {
    cell.bfgs_correct_summary = summary_from_json(j.at("bfgs_correct_summary"));
  }
  return cell;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << text;
  if (!out.flush()) {
    throw std::runtime_error("write to " + path + " failed");
  }
}

}  // namespace

Format format_from_string(const std::string& text) {
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  throw std::invalid_argument("unknown report format: " + text);
}

std::string report_to_json(const harness::BatteryReport& report) {
  json cells = json::array();
  for (const auto& cell : report.cells) {
    cells.push_back(cell_to_json(cell, report.config.include_timing));
  }
  const json j{{"config", config_to_json(report.config)}, {"cells", cells}};
  return j.dump(2) + "\n";
}

harness::BatteryReport report_from_json(const std::string& text) {
  const json j = json::parse(text);
  harness::BatteryReport report;
  report.config = config_from_json(j.at("config"));
  for (const auto& c : j.at("cells")) {
    report.cells.push_back(cell_from_json(c));
  }
  return report;
}

std::string report_to_csv(const harness::BatteryReport& report) {
  int max_dims = 0;
  for (const auto& cell : report.cells) {
    max_dims = std::max(max_dims, cell.dims);
  }
  std::string out =
      "trial_id,mode,objective,D,K,budget,seed,f_final,correct,"
      "bfgs_iterations,pbest_in_basin";
  for (int i = 0; i < max_dims; ++i) out += ",lb_" + std::to_string(i);
  for (int i = 0; i < max_dims; ++i) out += ",ub_" + std::to_string(i);
  out += "\n";
  for (const auto& cell : report.cells) {
    for (const auto& rec : cell.records) {
      out += std::to_string(rec.trial_id) + ',' + harness::to_string(rec.mode) +
             ',' + rec.objective + ',' + std::to_string(rec.dims) + ',' +
             std::to_string(rec.k_qubits) + ',' + std::to_string(rec.budget) +
             ',' + std::to_string(rec.seed) + ',' + fmt(rec.f_final) + ',' +
             (rec.correct ? '1' : '0') + ',' +
             std::to_string(rec.bfgs_iterations) + ',' +
             std::to_string(rec.pbest_in_basin);
      for (int i = 0; i < max_dims; ++i) {
        out += ',';
        if (rec.box && i < rec.dims) out += fmt(rec.box->lb[i]);
      }
      for (int i = 0; i < max_dims; ++i) {
        out += ',';
        if (rec.box && i < rec.dims) out += fmt(rec.box->ub[i]);
      }
      out += '\n';
    }
  }
  return out;
}

std::string plot_data_csv(const harness::BatteryReport& report) {
  std::string out =
      "objective,dims,mode,budget,metric,n,min,q1,median,q3,max,"
      "whisker_lo,whisker_hi,outliers\n";
  const auto row = [&out](const harness::CellReport& cell,
                          const std::string& metric,
                          const harness::FiveNumberSummary& s) {
    out += cell.objective + ',' + std::to_string(cell.dims) + ',' +
           harness::to_string(cell.mode) + ',' + std::to_string(cell.budget) +
           ',' + metric + ',' + std::to_string(s.n) + ',' + fmt(s.min) + ',' +
           fmt(s.q1) + ',' + fmt(s.median) + ',' + fmt(s.q3) + ',' +
           fmt(s.max) + ',' + fmt(s.whisker_lo) + ',' + fmt(s.whisker_hi) +
           ',';
    for (std::size_t i = 0; i < s.outliers.size(); ++i) {
      if (i) out += ';';
      out += fmt(s.outliers[i]);
    }
    out += '\n';
  };
  for (const auto& cell : report.cells) {
    if (cell.n_correct_summary) row(cell, "n_correct", *cell.n_correct_summary);
    if (cell.bfgs_all_summary) {
      row(cell, "bfgs_iterations_all", *cell.bfgs_all_summary);
    }
    if (cell.bfgs_correct_summary) {
      row(cell, "bfgs_iterations_correct", *cell.bfgs_correct_summary);
    }
  }
  return out;
}

void emit_report(const harness::BatteryReport& report, const std::string& path,
                 Format format) {
  write_file(path, format == Format::kJson ? report_to_json(report)
                                           : report_to_csv(report));
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of("/\\");
  const bool has_ext =
      dot != std::string::npos && (slash == std::string::npos || dot > slash);
  const std::string stem = has_ext ? path.substr(0, dot) : path;
  write_file(stem + "_plotdata.csv", plot_data_csv(report));
}

}  // namespace qseed::report
