#pragma once

#include <limits>

namespace agilepilot {

struct ActuatorParams {
    double omega = 180.0;                                // [rad/s]
    double zeta = 0.7;
    double position_limit = 30.0 * 0.017453292519943295;  // [rad]
    double rate_limit = 450.0 * 0.017453292519943295;     // [rad/s]

    static ActuatorParams unlimited(double omega = 180.0, double zeta = 0.7) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        return {omega, zeta, inf, inf};
    }

    bool operator==(const ActuatorParams&) const = default;
};

struct ActuatorState {
    double position = 0.0;  // [rad]
    double rate = 0.0;      // [rad/s]
};

/// Second-order fin servo
///   delta_ddot = omega^2 (delta_cmd - delta) - 2 zeta omega delta_dot
/// advanced one RK4 step with the command held, then saturated in a fixed
/// order:
///   1. rate clamped to +/- rate_limit,
///   2. position increment over the step limited to rate_limit * dt,
///   3. position clamped to +/- position_limit; the rate is zeroed when the
///      fin sits on a stop and is still driving into it.
ActuatorState actuator_step(double delta_cmd, double dt, const ActuatorState& state,
                            const ActuatorParams& params);

class Actuator {
public:
    explicit Actuator(ActuatorParams params = {}) : params_(params) {}

    const ActuatorState& step(double delta_cmd, double dt) {
        state_ = actuator_step(delta_cmd, dt, state_, params_);
        return state_;
    }

    void reset(ActuatorState s = {}) { state_ = s; }
    const ActuatorState& state() const { return state_; }
    const ActuatorParams& params() const { return params_; }

private:
    ActuatorParams params_;
    ActuatorState state_;
};

}  // namespace agilepilot
