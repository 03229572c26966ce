#pragma once

namespace agilepilot {

struct AtmosphereSample {
    double density = 0.0;          // [kg/m^3]
    double speed_of_sound = 0.0;   // [m/s]
    double dynamic_pressure = 0.0; // [Pa]
    double mach = 0.0;
};

namespace us76 {
inline constexpr double sea_level_temperature = 288.15;  // [K]
inline constexpr double sea_level_pressure = 101325.0;   // [Pa]
inline constexpr double lapse_rate = 0.0065;             // [K/m]
inline constexpr double gas_constant = 287.05287;        // [J/(kg K)] dry air
inline constexpr double gravity = 9.80665;               // [m/s^2]
inline constexpr double gamma = 1.4;
inline constexpr double tropopause_altitude = 11000.0;   // [m]
}  // namespace us76

/// 1976 standard atmosphere, troposphere only. Throws OutOfEnvelope for
/// altitudes outside [0, 11 km] and for negative speed.
AtmosphereSample atmosphere(double altitude, double speed);

}  // namespace agilepilot
