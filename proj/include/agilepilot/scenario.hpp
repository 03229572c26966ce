#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "agilepilot/actuator.hpp"
#include "agilepilot/airframe.hpp"
#include "agilepilot/controller.hpp"
#include "agilepilot/uncertainty.hpp"

namespace agilepilot {

inline constexpr int kScenarioSchemaVersion = 1;

struct InitialConditions {
    double speed = 250.0;     // [m/s]
    double altitude = 2000.0; // [m], constant: the maneuver plane is horizontal
    double alpha = 0.0;       // [rad]
    double q = 0.0;           // [rad/s]

    bool operator==(const InitialConditions&) const = default;
};

enum class CommandType {
    Step,            // alpha step at t_step
    Profile,         // alpha(t) from a CSV profile
    PiAcceleration,  // PI outer loop on an acceleration command from t = 0
    AgileTurn,       // alpha profile, then blend into the PI outer loop
};

const char* to_string(CommandType type);

struct CommandSource {
    CommandType type = CommandType::Step;
    double step_alpha = 20.0 * 0.017453292519943295;  // [rad]
    double step_time = 0.0;                           // [s]
    std::string profile_path;        // alpha profile (t_s, alpha_deg)
    double accel_cmd = 0.0;          // [m/s^2] constant normal-acceleration command
    std::string accel_profile_path;  // optional (t_s, accel_mps2); overrides accel_cmd

    bool operator==(const CommandSource&) const = default;
};

struct NoiseConfig {
    double alpha_sigma = 0.0;  // [rad]
    double q_sigma = 0.0;      // [rad/s]
    double accel_sigma = 0.0;  // [m/s^2]

    bool enabled() const { return alpha_sigma > 0.0 || q_sigma > 0.0 || accel_sigma > 0.0; }
    bool operator==(const NoiseConfig&) const = default;
};

struct ScenarioConfig {
    int schema_version = kScenarioSchemaVersion;
    std::string name = "scenario";

    /// Airframe file; empty selects the built-in synthetic airframe.
    std::string airframe_path;
    /// Resolved airframe. Boost values from the scenario override the file.
    Airframe airframe = synthetic_airframe();

    InitialConditions initial;
    CommandSource command;
    UncertaintyConfig uncertainty;
    AutopilotConfig autopilot;
    PIOuterGains outer;
    BlendParams blend;
    ActuatorParams actuator;
    NoiseConfig noise;

    double dt = 1e-3;      // [s]
    double t_final = 3.0;  // [s]
    std::uint64_t seed = 0;

    /// Length of the trailing window used for steady-state error.
    double steady_window = 0.5;  // [s]

    std::string output_dir = "out";
};

/// Default uncertainty magnitudes: 10% of the peak |C_N0| and |C_M0| in the
/// airframe tables.
double default_coupling_cn(const AeroModel& aero);
double default_coupling_cm(const AeroModel& aero);

/// Builds a config from a scenario document. Relative paths are resolved
/// against `base_dir`. Throws FlightError(Config) on schema or value errors.
ScenarioConfig scenario_from_json(const nlohmann::json& doc,
                                  const std::filesystem::path& base_dir = {});

nlohmann::json scenario_to_json(const ScenarioConfig& config);

ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Reads a scenario file as JSON without interpreting it.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Sets a dotted path (e.g. "controller.k1") inside a JSON document. `value`
/// is parsed as JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& dotted_path, const std::string& value);

/// Range and consistency checks, including existence of referenced files.
void validate(const ScenarioConfig& config);

/// Structural equality of everything the run depends on.
bool same_configuration(const ScenarioConfig& a, const ScenarioConfig& b);

// Airframe files ------------------------------------------------------------

nlohmann::json airframe_to_json(const Airframe& airframe);
Airframe airframe_from_json(const nlohmann::json& doc);
Airframe load_airframe(const std::filesystem::path& path);

}  // namespace agilepilot
