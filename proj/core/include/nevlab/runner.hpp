#pragma once

#include "nevlab/config.hpp"
#include "nevlab/report.hpp"

#include <string>

namespace nevlab {

struct RunOutcome {
    int exit_code = 0; // 0: all enabled verdicts pass, 2: some failed
    Json report;
    std::string report_path;
    std::string csv_path;
};

/// Executes the enabled checks in a fixed order (rows, fmt, smt,
/// defects, calculus, borel, oracle), writes report.json, rows.csv and
/// the enabled SVG plots under cfg.out_dir, and returns the report.
/// Configuration and numeric failures throw; verdict failures set the
/// exit code to 2.
RunOutcome run_experiment(const ExperimentConfig& cfg);

/// Deterministic catalog table, optionally filtered by substring.
std::string catalog_listing(const std::string& filter = "");

} // namespace nevlab
