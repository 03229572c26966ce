#include "agilepilot/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "agilepilot/actuator.hpp"
#include "agilepilot/controller.hpp"
#include "agilepilot/feedback_form.hpp"
#include "agilepilot/integrator.hpp"
#include "agilepilot/profile.hpp"

namespace agilepilot {

PlantVector to_vector(const LongitudinalState& s) { return {s.u, s.w, s.q, s.theta, s.x, s.y}; }

LongitudinalState from_vector(const PlantVector& v, double t) {
    return {v[kU], v[kW], v[kQ], v[kTheta], v[kX], v[kY], t};
}

namespace {

/// Produces the raw alpha command for the configured source.
class CommandSequencer {
public:
    explicit CommandSequencer(const ScenarioConfig& c)
        : config_(c), blender_(c.outer, c.blend), pi_(c.outer) {
        const CommandSource& s = c.command;
        if (s.type == CommandType::Profile || s.type == CommandType::AgileTurn) {
            alpha_profile_ = load_alpha_profile(s.profile_path);
        }
        if (!s.accel_profile_path.empty()) accel_profile_ = load_profile(s.accel_profile_path);
    }

    OuterLoopOutput next(double t, double dt, double accel_meas, double alpha_meas,
                         double heading_change) {
        const CommandSource& s = config_.command;
        OuterLoopOutput out;
        switch (s.type) {
            case CommandType::Step:
                out.alpha_cmd = t >= s.step_time ? s.step_alpha : config_.initial.alpha;
                break;
            case CommandType::Profile:
                out.alpha_cmd = alpha_profile_(t);
                break;
            case CommandType::PiAcceleration:
                out.alpha_cmd_pi = pi_.step(accel_cmd(t), accel_meas, dt);
                out.alpha_cmd = out.alpha_cmd_pi;
                out.lambda = 1.0;
                break;
            case CommandType::AgileTurn:
                out = blender_.step(t, dt, alpha_profile_(t), accel_cmd(t), accel_meas, alpha_meas,
                                    heading_change);
                break;
        }
        return out;
    }

private:
    double accel_cmd(double t) const {
        return accel_profile_.empty() ? config_.command.accel_cmd : accel_profile_(t);
    }

    const ScenarioConfig& config_;
    CommandProfile alpha_profile_;
    CommandProfile accel_profile_;
    CommandBlender blender_;
    PiAccelerationLoop pi_;
};

double gaussian(std::mt19937_64& rng, double sigma) {
    if (sigma <= 0.0) return 0.0;
    std::normal_distribution<double> n(0.0, sigma);
    return n(rng);
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& config) {
    validate(config);

    RunResult result;
    const double dt = config.dt;
    const auto steps = static_cast<std::size_t>(std::llround(config.t_final / dt));
    result.telemetry.reserve(steps + 1);

    const Airframe& airframe = config.airframe;
    const double altitude = config.initial.altitude;

    LongitudinalState state;
    state.u = config.initial.speed * std::cos(config.initial.alpha);
    state.w = config.initial.speed * std::sin(config.initial.alpha);
    state.q = config.initial.q;
    state.theta = config.initial.alpha;  // initial heading zero
    const double heading0 = state.heading();

    Actuator actuator(config.actuator);
    BacksteppingAutopilot autopilot(config.autopilot, airframe.aero);
    std::mt19937_64 rng(config.seed);

    try {
        CommandSequencer commands(config);
        for (std::size_t k = 0;; ++k) {
            const double t = static_cast<double>(k) * dt;
            state.t = t;
            const double fin = actuator.state().position;

            const PlantEvaluation plant =
                evaluate_plant(state, fin, altitude, airframe, config.uncertainty);
            const FlightCondition& truth = plant.condition;
            const Uncertainties lumped =
                truth_uncertainties(truth, fin, airframe.aero, config.uncertainty);
            const double a_z = plant.forces.fz / truth.mass.mass;

            Measurement meas;
            meas.t = t;
            meas.alpha = truth.alpha + gaussian(rng, config.noise.alpha_sigma);
            meas.q = truth.q + gaussian(rng, config.noise.q_sigma);
            meas.fin = fin;
            meas.condition = truth;
            meas.condition.alpha = meas.alpha;
            meas.condition.q = meas.q;
            const double accel_meas = -a_z + gaussian(rng, config.noise.accel_sigma);

            const double heading_change = state.heading() - heading0;
            const OuterLoopOutput cmd =
                commands.next(t, k == 0 ? 0.0 : dt, accel_meas, meas.alpha, heading_change);
            const AutopilotOutput ap = autopilot.update(meas, cmd.alpha_cmd, dt);
            if (!std::isfinite(ap.fin_cmd)) {
                throw FlightError(ErrorKind::Diverged, "non-finite fin command at t = " + std::to_string(t));
            }

            TelemetryRecord r;
            r.t = t;
            r.u = state.u;
            r.w = state.w;
            r.q = state.q;
            r.alpha = truth.alpha;
            r.speed = truth.speed;
            r.mach = truth.atmos.mach;
            r.qbar = truth.atmos.dynamic_pressure;
            r.alpha_cmd_raw = cmd.alpha_cmd;
            r.alpha_cmd_shaped = ap.x1d.value;
            r.z1 = ap.z.z1;
            r.z2 = ap.z.z2;
            r.delta1_true = lumped.delta1;
            r.delta2_true = lumped.delta2;
            r.delta1_hat = ap.estimate.delta1;
            r.delta2_hat = ap.estimate.delta2;
            r.x2d = ap.x2d;
            r.fin_cmd = ap.fin_cmd;
            r.fin = fin;
            r.a_z = a_z;
            r.lambda = cmd.lambda;
            r.fin_rate = actuator.state().rate;
            r.heading = state.heading();
            result.telemetry.push_back(r);

            if (k == steps) break;

            const double fin_start = fin;
            const double fin_end = actuator.step(ap.fin_cmd, dt).position;
            auto derivative = [&](double ts, const PlantVector& v) {
                const double frac = (ts - t) / dt;
                const double fin_now = fin_start + frac * (fin_end - fin_start);
                const StateDerivative d = state_derivative(from_vector(v, ts), fin_now, altitude,
                                                           airframe, config.uncertainty);
                return PlantVector{d.u_dot, d.w_dot, d.q_dot, d.theta_dot, d.x_dot, d.y_dot};
            };
            state = from_vector(rk4_step(to_vector(state), t, dt, derivative), t + dt);
        }
    } catch (const FlightError& e) {
        result.aborted = true;
        result.abort_kind = e.kind();
        result.abort_reason = e.what();
    }

    if (!result.telemetry.empty()) {
        result.metrics = compute_metrics(result.telemetry, metrics_settings(config));
    }
    return result;
}

// Telemetry ------------------------------------------------------------------

const std::vector<std::string>& telemetry_channels() {
    static const std::vector<std::string> names = {
        "t",        "u",          "w",           "q",           "alpha",
        "V",        "mach",       "qbar",        "alpha_cmd_raw", "alpha_cmd_shaped",
        "z1",       "z2",         "delta1_true", "delta2_true", "delta1_hat",
        "delta2_hat", "x2d",      "fin_cmd",     "fin",         "a_z",
        "lambda",   "fin_rate",   "heading"};
    return names;
}

std::vector<double> telemetry_values(const TelemetryRecord& r) {
    return {r.t,          r.u,           r.w,           r.q,          r.alpha,
            r.speed,      r.mach,        r.qbar,        r.alpha_cmd_raw, r.alpha_cmd_shaped,
            r.z1,         r.z2,          r.delta1_true, r.delta2_true, r.delta1_hat,
            r.delta2_hat, r.x2d,         r.fin_cmd,     r.fin,        r.a_z,
            r.lambda,     r.fin_rate,    r.heading};
}

void write_telemetry_csv(std::ostream& out, const std::vector<TelemetryRecord>& telemetry) {
    const auto& names = telemetry_channels();
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << (i ? "," : "") << names[i];
    }
    out << '\n';
    char buf[32];
    for (const TelemetryRecord& r : telemetry) {
        const std::vector<double> v = telemetry_values(r);
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.9g", v[i]);
            if (i) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

nlohmann::json metrics_to_json(const RunResult& result) {
    auto opt = [](const std::optional<double>& v) -> nlohmann::json {
        if (v && std::isfinite(*v)) return *v;
        return nullptr;
    };
    const Metrics& m = result.metrics;
    nlohmann::json j = {
        {"status", result.aborted ? "aborted" : "ok"},
        {"abort_kind", result.abort_kind ? nlohmann::json(to_string(*result.abort_kind)) : nullptr},
        {"abort_reason", result.aborted ? nlohmann::json(result.abort_reason) : nullptr},
        {"samples", result.telemetry.size()},
        {"final_time_s", opt(m.final_time)},
        {"step_size_rad", opt(m.step_size)},
        {"rise_time_s", opt(m.rise_time)},
        {"settling_time_s", opt(m.settling_time)},
        {"overshoot_pct", opt(m.overshoot_pct)},
        {"steady_state_error_rad", opt(m.steady_state_error)},
        {"peak_tracking_error_rad", opt(m.peak_tracking_error)},
        {"rms_tracking_error_rad", opt(m.rms_tracking_error)},
        {"peak_command_error_rad", opt(m.peak_command_error)},
        {"peak_fin_rad", opt(m.peak_fin)},
        {"peak_fin_rate_rps", opt(m.peak_fin_rate)},
        {"peak_fin_rate_demanded_rps", opt(m.peak_fin_rate_demanded)},
        {"rms_delta1_error", opt(m.rms_delta1_error)},
        {"rms_delta2_error", opt(m.rms_delta2_error)},
        {"heading_reversal_time_s", opt(m.heading_reversal_time)},
    };
    return j;
}

void write_run_outputs(const RunResult& result, const std::filesystem::path& dir,
                       const std::string& stem) {
    std::filesystem::create_directories(dir);
    const std::string prefix = stem.empty() ? "" : stem + "_";
    {
        std::ofstream csv(dir / (prefix + "telemetry.csv"), std::ios::binary);
        write_telemetry_csv(csv, result.telemetry);
    }
    std::ofstream metrics(dir / (prefix + "metrics.json"), std::ios::binary);
    metrics << metrics_to_json(result).dump(2) << '\n';
}

}  // namespace agilepilot
