#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "agilepilot/errors.hpp"
#include "agilepilot/scenario.hpp"

namespace agilepilot {

/// One row of telemetry per simulation step. Angles in rad, rates in rad/s.
struct TelemetryRecord {
    double t = 0.0;
    double u = 0.0;
    double w = 0.0;
    double q = 0.0;
    double alpha = 0.0;
    double speed = 0.0;
    double mach = 0.0;
    double qbar = 0.0;
    double alpha_cmd_raw = 0.0;
    double alpha_cmd_shaped = 0.0;
    double z1 = 0.0;
    double z2 = 0.0;
    double delta1_true = 0.0;
    double delta2_true = 0.0;
    double delta1_hat = 0.0;
    double delta2_hat = 0.0;
    double x2d = 0.0;
    double fin_cmd = 0.0;
    double fin = 0.0;
    double a_z = 0.0;     // body z acceleration from aero force, positive down [m/s^2]
    double lambda = 0.0;  // command blend factor
    double fin_rate = 0.0;
    double heading = 0.0;
};

/// CSV column names, in file order.
const std::vector<std::string>& telemetry_channels();

/// Field values in the same order as telemetry_channels().
std::vector<double> telemetry_values(const TelemetryRecord& r);

/// Header row plus one row per record; values printed with 9 significant digits.
void write_telemetry_csv(std::ostream& out, const std::vector<TelemetryRecord>& telemetry);

struct Metrics {
    // Step-response metrics; empty when the command is not a step or the
    // step size is zero.
    std::optional<double> step_size;
    std::optional<double> rise_time;
    std::optional<double> settling_time;
    std::optional<double> overshoot_pct;

    std::optional<double> steady_state_error;    // mean |alpha_cmd_raw - alpha| over the trailing window
    std::optional<double> peak_tracking_error;   // max |alpha - alpha_cmd_shaped|
    std::optional<double> rms_tracking_error;
    std::optional<double> peak_command_error;    // max |alpha - alpha_cmd_raw|
    std::optional<double> peak_fin;
    std::optional<double> peak_fin_rate;         // achieved
    std::optional<double> peak_fin_rate_demanded;
    std::optional<double> rms_delta1_error;      // after estimator warm-up
    std::optional<double> rms_delta2_error;
    std::optional<double> heading_reversal_time;
    std::optional<double> final_time;
};

struct MetricsSettings {
    bool step_command = false;
    double step_time = 0.0;
    double step_target = 0.0;
    double steady_window = 0.5;
    double estimate_skip = 0.0;  // skip this long from the start for RMS estimate errors
    double heading_reversal = 0.0;
};

MetricsSettings metrics_settings(const ScenarioConfig& config);

Metrics compute_metrics(const std::vector<TelemetryRecord>& telemetry,
                        const MetricsSettings& settings);

struct RunResult {
    std::vector<TelemetryRecord> telemetry;
    Metrics metrics;
    bool aborted = false;
    std::optional<ErrorKind> abort_kind;
    std::string abort_reason;
};

/// Metrics and run status as a flat key/value JSON object. Not-applicable
/// metrics are written as null.
nlohmann::json metrics_to_json(const RunResult& result);

/// Runs the closed loop to t_final. Envelope violations, divergence and loss
/// of control effectiveness end the run early with `aborted` set and the
/// telemetry recorded so far.
RunResult run_scenario(const ScenarioConfig& config);

/// Writes telemetry.csv and metrics.json into `dir` (created if missing).
void write_run_outputs(const RunResult& result, const std::filesystem::path& dir,
                       const std::string& stem = "");

/// Plant state vector layout used with rk4_step.
enum PlantIndex : std::size_t { kU, kW, kQ, kTheta, kX, kY, kPlantStates };
using PlantVector = std::array<double, kPlantStates>;

PlantVector to_vector(const LongitudinalState& s);
LongitudinalState from_vector(const PlantVector& v, double t);

}  // namespace agilepilot
