#include "agilepilot/atmosphere.hpp"

#include <cmath>
#include <string>

#include "agilepilot/errors.hpp"

namespace agilepilot {

AtmosphereSample atmosphere(double altitude, double speed) {
    using namespace us76;
    if (!(altitude >= 0.0 && altitude <= tropopause_altitude)) {
        throw FlightError(ErrorKind::OutOfEnvelope,
                          "altitude " + std::to_string(altitude) +
                              " m outside troposphere model [0, 11000]");
    }
    if (!(speed >= 0.0)) {
        throw FlightError(ErrorKind::OutOfEnvelope, "negative airspeed");
    }

    const double temperature = sea_level_temperature - lapse_rate * altitude;
    const double exponent = gravity / (gas_constant * lapse_rate);
    const double pressure =
        sea_level_pressure * std::pow(temperature / sea_level_temperature, exponent);

    AtmosphereSample s;
    s.density = pressure / (gas_constant * temperature);
    s.speed_of_sound = std::sqrt(gamma * gas_constant * temperature);
    s.dynamic_pressure = 0.5 * s.density * speed * speed;
    s.mach = speed / s.speed_of_sound;
    return s;
}

}  // namespace agilepilot
