#pragma once

#include <string>

#include "qseed/harness.hpp"

namespace qseed::report {

enum class Format { kJson, kCsv };

Format format_from_string(const std::string& text);

// Canonical JSON: keys sorted, doubles in shortest round-trip form, and
// wall_time dropped unless config.include_timing. Two runs with the same
// config produce byte-identical text.
std::string report_to_json(const harness::BatteryReport& report);

harness::BatteryReport report_from_json(const std::string& text);

// One row per trial. Box columns are sized by the widest cell and left
// empty for classical rows and narrower cells.
std::string report_to_csv(const harness::BatteryReport& report);

// Five-number box-plot summaries, one row per (cell, metric).
std::string plot_data_csv(const harness::BatteryReport& report);

// Writes the report at `path` in `format` plus the plot data next to it
// at <stem>_plotdata.csv.
void emit_report(const harness::BatteryReport& report, const std::string& path,
                 Format format);

}  // namespace qseed::report
