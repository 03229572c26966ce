#pragma once

#include <optional>

#include "agilepilot/airframe.hpp"
#include "agilepilot/feedback_form.hpp"

namespace agilepilot {

struct BacksteppingGains {
    double k1 = 25.0;     // [1/s]
    double k2 = 25.0;     // [1/s]
    double tau_d = 0.02;  // [s] single-lag time constant realizing the delay

    bool operator==(const BacksteppingGains&) const = default;
};

struct ShapingParams {
    double omega = 50.0;  // [rad/s]
    double zeta = 1.0;

    bool operator==(const ShapingParams&) const = default;
};

struct PIOuterGains {
    double kp = 0.0098;  // [rad per m/s^2]
    double ki = 0.34;    // [rad per m/s]
    double alpha_limit = 50.0 * 0.017453292519943295;  // [rad]

    bool operator==(const PIOuterGains&) const = default;
};

// ---------------------------------------------------------------------------
// Command shaping

struct ShapedCommand {
    double value = 0.0;
    double rate = 0.0;
    double accel = 0.0;
};

/// Second-order low-pass  omega^2 / (s^2 + 2 zeta omega s + omega^2), advanced
/// with the exact zero-order-hold transition matrix. The derivatives are the
/// filter's own states, never finite differences.
class SecondOrderFilter {
public:
    explicit SecondOrderFilter(ShapingParams params = {});

    /// Places the filter at rest at `value`.
    void reset(double value);

    /// Advances one step with `input` held over the step.
    ShapedCommand step(double input, double dt);

    ShapedCommand output() const { return {value_, rate_, accel_}; }
    const ShapingParams& params() const { return params_; }

private:
    void update_transition(double dt);

    ShapingParams params_;
    double value_ = 0.0;
    double rate_ = 0.0;
    double accel_ = 0.0;
    double last_input_ = 0.0;

    double cached_dt_ = -1.0;
    double phi_[2][3] = {};  // [x, xdot] <- [x, xdot, input]
};

// ---------------------------------------------------------------------------
// Backstepping law

struct Residuals {
    double z1 = 0.0;  // [rad]
    double z2 = 0.0;  // [rad/s]
};

Residuals residuals(double x1, double x2, double x1d, double x2d);

/// x2d = -f1 - K1 z1 + x1d_dot - delta1_hat
double virtual_command(double f1, double z1, double x1d_dot, double delta1_hat,
                       const BacksteppingGains& gains);

/// u = (-f2 - K2 z2 + x2d_dot - z1 - delta2_hat) / h2. Throws EffectivenessLoss
/// when |h2| is zero or not finite.
double control_law(double f2, double h2, double z1, double z2, double x2d_dot, double delta2_hat,
                   const BacksteppingGains& gains);

// ---------------------------------------------------------------------------
// Time-delay estimation

/// First-order lag 1/(tau s + 1) used as the realization of f(t - L).
///
/// The step is exact for inputs that vary linearly between samples
/// (first-order hold); for a constant input it reduces to
/// y+ = y + (1 - exp(-dt/tau)) (x - y).
class LagFilter {
public:
    explicit LagFilter(double tau = 0.02) : tau_(tau) {}

    /// Sets the lag output to `value` and the last input sample to `value`.
    void reset(double value) { reset(value, value); }
    void reset(double state, double input);

    /// Advances from the previous input sample to `input` over `dt`.
    double step(double input, double dt);

    double value() const { return state_; }
    /// Exact time derivative of the lag output at the last sample.
    double derivative() const { return (last_input_ - state_) / tau_; }
    double tau() const { return tau_; }

private:
    double tau_;
    double state_ = 0.0;
    double last_input_ = 0.0;
};

/// One sample of the quantities the estimator delays.
struct EstimatorSample {
    double x1 = 0.0;   // alpha
    double x2 = 0.0;   // q
    double f1 = 0.0;
    double f2 = 0.0;
    double h2u = 0.0;  // h2 * achieved fin deflection
};

struct Estimates {
    double delta1 = 0.0;
    double delta2 = 0.0;
};

/// delta1_hat = x1dot(t-L) - f1(t-L) - x2(t-L)
/// delta2_hat = x2dot(t-L) - f2(t-L) - (h2 u)(t-L)
Estimates estimate_uncertainties(double x1_dot_delayed, double x2_dot_delayed,
                                 double f1_delayed, double f2_delayed, double x2_delayed,
                                 double h2u_delayed);

/// Runs the five lag channels and produces the delayed-model estimates.
/// Delayed state derivatives are the derivatives of the lag outputs.
class TimeDelayEstimator {
public:
    explicit TimeDelayEstimator(double tau = 0.02);

    /// Initializes every channel at its current sample.
    Estimates reset(const EstimatorSample& s);
    Estimates update(const EstimatorSample& s, double dt);

    Estimates current() const;
    double tau() const { return x1_.tau(); }

private:
    LagFilter x1_, x2_, f1_, f2_, h2u_;
};

// ---------------------------------------------------------------------------
// Outer acceleration loop and command blending

class PiAccelerationLoop {
public:
    explicit PiAccelerationLoop(PIOuterGains gains = {}) : gains_(gains) {}

    /// Returns the alpha command for an acceleration error a_cmd - a_meas.
    /// The integrator is clamped so |ki * integral| <= alpha_limit and the
    /// output is clamped to +/- alpha_limit.
    double step(double a_cmd, double a_meas, double dt);

    void reset(double integral = 0.0) { integral_ = integral; }
    double integral() const { return integral_; }
    const PIOuterGains& gains() const { return gains_; }

private:
    PIOuterGains gains_;
    double integral_ = 0.0;
};

/// (1 - lambda) * inner + lambda * pi
double blend_commands(double alpha_cmd_inner, double alpha_cmd_pi, double lambda);

struct BlendParams {
    double duration = 0.2;                                  // [s]
    double exit_alpha = 10.0 * 0.017453292519943295;        // [rad]
    double heading_reversal = 160.0 * 0.017453292519943295; // [rad]

    bool operator==(const BlendParams&) const = default;
};

struct OuterLoopOutput {
    double alpha_cmd = 0.0;
    double alpha_cmd_pi = 0.0;
    double lambda = 0.0;
};

/// Hands the alpha command over from an agile-turn profile to the PI
/// acceleration loop. Once |alpha| drops below `exit_alpha` after the heading
/// has turned through `heading_reversal`, lambda ramps linearly 0 -> 1 over
/// `duration`. The PI integrator only runs once blending has started.
class CommandBlender {
public:
    CommandBlender(PIOuterGains gains, BlendParams params) : pi_(gains), params_(params) {}

    OuterLoopOutput step(double t, double dt, double alpha_cmd_turn, double accel_cmd,
                         double accel_meas, double alpha_meas, double heading_change);

    std::optional<double> blend_start() const { return blend_start_; }

private:
    PiAccelerationLoop pi_;
    BlendParams params_;
    std::optional<double> blend_start_;
};

// ---------------------------------------------------------------------------
// Composite inner loop

struct AutopilotConfig {
    BacksteppingGains gains;
    ShapingParams command_shaping;
    ShapingParams virtual_shaping{250.0, 1.0};  // shapes x2d to produce x2d_dot
    bool adaptation = true;
    /// Adaptation output is ramped in linearly over warmup_lags * tau_d.
    double warmup_lags = 5.0;
    double effectiveness_floor = kDefaultEffectivenessFloor;

    bool operator==(const AutopilotConfig&) const = default;
};

/// What the controller sees at one instant.
struct Measurement {
    double t = 0.0;
    double alpha = 0.0;
    double q = 0.0;
    double fin = 0.0;  // achieved deflection, feeds the h2*u channel
    FlightCondition condition;
};

struct AutopilotOutput {
    double fin_cmd = 0.0;
    ShapedCommand x1d;
    double x2d = 0.0;
    double x2d_dot = 0.0;
    Residuals z;
    Estimates estimate;       // raw estimator output
    Estimates applied;        // what entered the law (zero with adaptation off)
    StrictFeedbackTerms model;
};

/// Adaptive backstepping angle-of-attack autopilot with time-delay
/// estimation of the lumped model error. A single instance must be stepped
/// sequentially at a fixed rate.
class BacksteppingAutopilot {
public:
    BacksteppingAutopilot(AutopilotConfig config, const AeroModel& nominal_aero);

    /// First call initializes the shaping filters at the measured alpha and
    /// the estimator at the current sample; later calls advance by `dt`.
    AutopilotOutput update(const Measurement& m, double alpha_cmd_raw, double dt);

    const AutopilotConfig& config() const { return config_; }

private:
    AutopilotConfig config_;
    const AeroModel* aero_;
    SecondOrderFilter command_filter_;
    SecondOrderFilter virtual_filter_;
    TimeDelayEstimator estimator_;
    bool initialized_ = false;
    double t_start_ = 0.0;
};

}  // namespace agilepilot
