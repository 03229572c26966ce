#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "agilepilot/simulator.hpp"

namespace agilepilot {

struct SweepAxis {
    std::string path;                  // dotted path into the scenario document
    std::vector<nlohmann::json> values;
};

struct SweepSpec {
    nlohmann::json base;               // scenario document
    std::filesystem::path base_dir;    // for resolving relative paths in `base`
    std::vector<SweepAxis> axes;
    unsigned threads = 0;              // 0: hardware concurrency
};

/// Sweep file:
///   {"schema_version": 1,
///    "scenario": "step.json" | { ...inline scenario... },
///    "axes": [{"path": "uncertainty.delta_pert", "values": [0, 0.1]}, ...],
///    "threads": 4}
SweepSpec sweep_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
SweepSpec load_sweep(const std::filesystem::path& path);

struct SweepCell {
    std::size_t index = 0;
    std::vector<std::pair<std::string, nlohmann::json>> assignment;
    std::string status;                // "ok", "aborted" or "config_error"
    std::string message;
    nlohmann::json metrics;            // metrics_to_json() of the run, null on config error
};

struct SweepResult {
    std::vector<SweepCell> cells;      // in cross-product order

    bool all_ok() const;
};

/// Number of cells in the cross product.
std::size_t sweep_size(const SweepSpec& spec);

/// Runs every cell (concurrently), writing cell_NNN/telemetry.csv and
/// cell_NNN/metrics.json under `out_dir` plus sweep_summary.csv. `overrides`
/// are applied to every cell before the axis values.
SweepResult run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                      const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Aggregate table, one row per cell.
void write_sweep_summary(std::ostream& out, const SweepSpec& spec, const SweepResult& result);

}  // namespace agilepilot
