#pragma once

#include "sgsim/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <vector>

// Config-driven experiment runner shared by the CLI and the python
// bindings. Every run writes a JSON summary (with a provenance block:
// code version, seed, schedule, config echo) and, for grid scans, a
// per-point CSV. Failures at individual grid points are recorded in the
// summary and the run continues.

namespace sgsim {

inline constexpr const char* kCodeVersion = "0.1.0";

struct ExperimentResult {
  nlohmann::json summary;
  std::filesystem::path summary_path;
  std::vector<std::filesystem::path> artifacts; // CSVs, checkpoints
};

// Dispatches on [experiment] kind = predict | dmrg | scan | fit | compare.
ExperimentResult run_experiment(const Config& cfg,
                                const std::filesystem::path& out_dir);

// Simple CSV helpers used by the runner and the CLI.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
// Reads a CSV with a header line; returns column-major data keyed by name.
std::vector<double> read_csv_column(const std::filesystem::path& path,
                                    const std::string& column);

} // namespace sgsim
