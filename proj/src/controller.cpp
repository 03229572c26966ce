#include "agilepilot/controller.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "agilepilot/errors.hpp"

namespace agilepilot {

// ---------------------------------------------------------------------------
// SecondOrderFilter

SecondOrderFilter::SecondOrderFilter(ShapingParams params) : params_(params) {}

void SecondOrderFilter::reset(double value) {
    value_ = value;
    rate_ = 0.0;
    accel_ = 0.0;
    last_input_ = value;
}

void SecondOrderFilter::update_transition(double dt) {
    if (dt == cached_dt_) return;
    const double w = params_.omega;
    const double z = params_.zeta;
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 1) = 1.0;
    m(1, 0) = -w * w;
    m(1, 1) = -2.0 * z * w;
    m(1, 2) = w * w;
    const Eigen::Matrix3d e = (m * dt).exp();
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 3; ++c) phi_[r][c] = e(r, c);
    }
    cached_dt_ = dt;
}

ShapedCommand SecondOrderFilter::step(double input, double dt) {
    update_transition(dt);
    const double x = phi_[0][0] * value_ + phi_[0][1] * rate_ + phi_[0][2] * input;
    const double v = phi_[1][0] * value_ + phi_[1][1] * rate_ + phi_[1][2] * input;
    value_ = x;
    rate_ = v;
    last_input_ = input;
    const double w = params_.omega;
    accel_ = w * w * (input - x) - 2.0 * params_.zeta * w * v;
    return output();
}

// ---------------------------------------------------------------------------
// Backstepping law

Residuals residuals(double x1, double x2, double x1d, double x2d) {
    return {x1 - x1d, x2 - x2d};
}

double virtual_command(double f1, double z1, double x1d_dot, double delta1_hat,
                       const BacksteppingGains& gains) {
    return -f1 - gains.k1 * z1 + x1d_dot - delta1_hat;
}

double control_law(double f2, double h2, double z1, double z2, double x2d_dot, double delta2_hat,
                   const BacksteppingGains& gains) {
    if (!(std::abs(h2) > 0.0) || !std::isfinite(h2)) {
        throw FlightError(ErrorKind::EffectivenessLoss, "control effectiveness h2 is zero");
    }
    return (-f2 - gains.k2 * z2 + x2d_dot - z1 - delta2_hat) / h2;
}

// ---------------------------------------------------------------------------
// Time-delay estimation

void LagFilter::reset(double state, double input) {
    state_ = state;
    last_input_ = input;
}

double LagFilter::step(double input, double dt) {
    const double decay = std::exp(-dt / tau_);
    const double gain = 1.0 - decay;
    // Ramp-invariant weight on the input increment over the step.
    const double slope_weight = 1.0 - (tau_ / dt) * gain;
    state_ = decay * state_ + gain * last_input_ + slope_weight * (input - last_input_);
    last_input_ = input;
    return state_;
}

Estimates estimate_uncertainties(double x1_dot_delayed, double x2_dot_delayed,
                                 double f1_delayed, double f2_delayed, double x2_delayed,
                                 double h2u_delayed) {
    return {x1_dot_delayed - f1_delayed - x2_delayed, x2_dot_delayed - f2_delayed - h2u_delayed};
}

TimeDelayEstimator::TimeDelayEstimator(double tau)
    : x1_(tau), x2_(tau), f1_(tau), f2_(tau), h2u_(tau) {}

Estimates TimeDelayEstimator::reset(const EstimatorSample& s) {
    x1_.reset(s.x1);
    x2_.reset(s.x2);
    f1_.reset(s.f1);
    f2_.reset(s.f2);
    h2u_.reset(s.h2u);
    return current();
}

Estimates TimeDelayEstimator::update(const EstimatorSample& s, double dt) {
    x1_.step(s.x1, dt);
    x2_.step(s.x2, dt);
    f1_.step(s.f1, dt);
    f2_.step(s.f2, dt);
    h2u_.step(s.h2u, dt);
    return current();
}

Estimates TimeDelayEstimator::current() const {
    return estimate_uncertainties(x1_.derivative(), x2_.derivative(), f1_.value(), f2_.value(),
                                  x2_.value(), h2u_.value());
}

// ---------------------------------------------------------------------------
// Outer loop

double PiAccelerationLoop::step(double a_cmd, double a_meas, double dt) {
    const double error = a_cmd - a_meas;
    integral_ += error * dt;
    if (gains_.ki != 0.0) {
        const double bound = gains_.alpha_limit / std::abs(gains_.ki);
        integral_ = std::clamp(integral_, -bound, bound);
    }
    const double out = gains_.kp * error + gains_.ki * integral_;
    return std::clamp(out, -gains_.alpha_limit, gains_.alpha_limit);
}

double blend_commands(double alpha_cmd_inner, double alpha_cmd_pi, double lambda) {
    return (1.0 - lambda) * alpha_cmd_inner + lambda * alpha_cmd_pi;
}

OuterLoopOutput CommandBlender::step(double t, double dt, double alpha_cmd_turn, double accel_cmd,
                                     double accel_meas, double alpha_meas, double heading_change) {
    if (!blend_start_ && std::abs(alpha_meas) < params_.exit_alpha &&
        std::abs(heading_change) >= params_.heading_reversal) {
        blend_start_ = t;
    }
    OuterLoopOutput out;
    if (blend_start_) {
        out.lambda = std::clamp((t - *blend_start_) / params_.duration, 0.0, 1.0);
        out.alpha_cmd_pi = pi_.step(accel_cmd, accel_meas, dt);
    }
    out.alpha_cmd = blend_commands(alpha_cmd_turn, out.alpha_cmd_pi, out.lambda);
    return out;
}

// ---------------------------------------------------------------------------
// BacksteppingAutopilot

BacksteppingAutopilot::BacksteppingAutopilot(AutopilotConfig config, const AeroModel& nominal_aero)
    : config_(config),
      aero_(&nominal_aero),
      command_filter_(config.command_shaping),
      virtual_filter_(config.virtual_shaping),
      estimator_(config.gains.tau_d) {}

AutopilotOutput BacksteppingAutopilot::update(const Measurement& m, double alpha_cmd_raw,
                                              double dt) {
    AutopilotOutput out;
    const bool first = !initialized_;

    if (first) {
        command_filter_.reset(m.alpha);
        t_start_ = m.t;
    } else {
        command_filter_.step(alpha_cmd_raw, dt);
    }
    out.x1d = command_filter_.output();

    out.model = eval_terms(m.condition, m.fin, *aero_, 1.0, config_.effectiveness_floor);
    const EstimatorSample sample{m.alpha, m.q, out.model.f1, out.model.f2,
                                out.model.h2 * m.fin};
    out.estimate = first ? estimator_.reset(sample) : estimator_.update(sample, dt);

    if (config_.adaptation) {
        const double ramp_time = config_.warmup_lags * config_.gains.tau_d;
        const double w = ramp_time > 0.0 ? std::clamp((m.t - t_start_) / ramp_time, 0.0, 1.0)
                                         : 1.0;
        out.applied = {w * out.estimate.delta1, w * out.estimate.delta2};
    }

    const double z1 = m.alpha - out.x1d.value;
    out.x2d = virtual_command(out.model.f1, z1, out.x1d.rate, out.applied.delta1, config_.gains);
    if (first) {
        virtual_filter_.reset(out.x2d);
    } else {
        virtual_filter_.step(out.x2d, dt);
    }
    out.x2d_dot = virtual_filter_.output().rate;

    out.z = residuals(m.alpha, m.q, out.x1d.value, out.x2d);
    out.fin_cmd = control_law(out.model.f2, out.model.h2, out.z.z1, out.z.z2, out.x2d_dot,
                              out.applied.delta2, config_.gains);
    initialized_ = true;
    return out;
}

}  // namespace agilepilot
