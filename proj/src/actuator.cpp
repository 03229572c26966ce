#include "agilepilot/actuator.hpp"

#include <algorithm>
#include <cmath>

namespace agilepilot {

namespace {

struct Rates {
    double position;
    double rate;
};

Rates servo(double cmd, double position, double rate, const ActuatorParams& p) {
    return {rate, p.omega * p.omega * (cmd - position) - 2.0 * p.zeta * p.omega * rate};
}

}  // namespace

ActuatorState actuator_step(double delta_cmd, double dt, const ActuatorState& s,
                            const ActuatorParams& p) {
    const Rates k1 = servo(delta_cmd, s.position, s.rate, p);
    const Rates k2 = servo(delta_cmd, s.position + 0.5 * dt * k1.position,
                           s.rate + 0.5 * dt * k1.rate, p);
    const Rates k3 = servo(delta_cmd, s.position + 0.5 * dt * k2.position,
                           s.rate + 0.5 * dt * k2.rate, p);
    const Rates k4 = servo(delta_cmd, s.position + dt * k3.position, s.rate + dt * k3.rate, p);

    ActuatorState next;
    next.position =
        s.position + dt / 6.0 * (k1.position + 2.0 * k2.position + 2.0 * k3.position + k4.position);
    next.rate = s.rate + dt / 6.0 * (k1.rate + 2.0 * k2.rate + 2.0 * k3.rate + k4.rate);

    next.rate = std::clamp(next.rate, -p.rate_limit, p.rate_limit);
    if (std::isfinite(p.rate_limit)) {
        const double travel = p.rate_limit * dt;
        next.position = std::clamp(next.position, s.position - travel, s.position + travel);
    }
    if (next.position >= p.position_limit) {
        next.position = p.position_limit;
        if (next.rate > 0.0) next.rate = 0.0;
    } else if (next.position <= -p.position_limit) {
        next.position = -p.position_limit;
        if (next.rate < 0.0) next.rate = 0.0;
    }
    return next;
}

}  // namespace agilepilot
