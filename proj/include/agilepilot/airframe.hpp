#pragma once

#include <cmath>
#include <string>

#include "agilepilot/aero_model.hpp"
#include "agilepilot/atmosphere.hpp"
#include "agilepilot/uncertainty.hpp"

namespace agilepilot {

/// Pitch-plane rigid-body state. The maneuver plane is horizontal (the
/// missile flies rolled 90 deg), so gravity does not enter and altitude is a
/// scenario constant. `theta` is the body attitude in the maneuver plane and
/// (x, y) the position in that plane; both are bookkeeping only.
struct LongitudinalState {
    double u = 0.0;      // [m/s] body x velocity
    double w = 0.0;      // [m/s] body z velocity
    double q = 0.0;      // [rad/s]
    double theta = 0.0;  // [rad]
    double x = 0.0;      // [m]
    double y = 0.0;      // [m]
    double t = 0.0;      // [s]

    double speed() const { return std::hypot(u, w); }
    double alpha() const { return std::atan2(w, u); }
    /// Velocity heading in the maneuver plane.
    double heading() const { return theta - alpha(); }
};

struct StateDerivative {
    double u_dot = 0.0;
    double w_dot = 0.0;
    double q_dot = 0.0;
    double theta_dot = 0.0;
    double x_dot = 0.0;
    double y_dot = 0.0;
};

/// Launch/burnout pairs; properties vary linearly with time during boost.
struct BoostSchedule {
    double mass_launch = 90.0;       // [kg]
    double mass_burnout = 65.0;      // [kg]
    double iyy_launch = 50.0;        // [kg m^2]
    double iyy_burnout = 38.0;       // [kg m^2]
    double xcg_launch = 1.55;        // [m] from nose
    double xcg_burnout = 1.52;       // [m] from nose
    double xcg_ref = 1.55;           // [m] moment reference (CG at launch)
    double thrust = 8200.0;          // [N]
    double t_burnout = 2.5;          // [s]

    bool operator==(const BoostSchedule&) const = default;
};

struct MassProperties {
    double mass = 0.0;     // [kg]
    double iyy = 0.0;      // [kg m^2]
    double xcg = 0.0;      // [m]
    double xcg_ref = 0.0;  // [m]
    double thrust = 0.0;   // [N]

    /// x_cg,ref - x_cg
    double cg_shift() const { return xcg_ref - xcg; }
};

/// Thrust is on for t in the closed interval [0, t_burnout].
MassProperties mass_properties(double t, const BoostSchedule& boost);

struct Airframe {
    std::string name = "synthetic-srAAM";
    AeroModel aero;
    BoostSchedule boost;
};

/// Default synthetic airframe. These are representative numbers for a
/// short-range air-to-air missile, not data for any real vehicle.
Airframe synthetic_airframe();

/// Everything the aero buildup needs at one instant.
struct FlightCondition {
    double alpha = 0.0;  // [rad]
    double speed = 0.0;  // [m/s]
    double q = 0.0;      // [rad/s]
    AtmosphereSample atmos;
    MassProperties mass;
};

/// Maximum |alpha| accepted by the plant before the run aborts.
inline constexpr double kAlphaEnvelope = 1.5707963267948966;  // 90 deg

/// Builds a flight condition and enforces V > 0 and |alpha| <= 90 deg.
FlightCondition flight_condition(const LongitudinalState& state, double altitude,
                                 const BoostSchedule& boost);

/// Nominal coefficient buildup. Fin-dependent force terms are kept separate
/// so the truth plant can include or drop them independently of the moment.
struct AeroCoefficients {
    double axial_body = 0.0;   // C_A0 + C_Aa*alpha + dC_AT
    double axial_fin = 0.0;    // C_Ad*(|delta|/2)^2
    double normal_body = 0.0;  // C_N0
    double normal_fin = 0.0;   // C_Nd*delta
    double moment = 0.0;       // C_M including CG transfer of C_N0 + C_Nd*delta

    double axial() const { return axial_body + axial_fin; }
    double normal() const { return normal_body + normal_fin; }
};

AeroCoefficients aero_coefficients(double alpha, double mach, double delta, double q,
                                   double speed, const MassProperties& mass,
                                   const AeroModel& aero);

/// Coefficients as the truth plant feels them: (1 + delta_pert) scaling on the
/// buildup, worst-case roll-coupling increments, and the CG transfer of the
/// coupling normal force.
struct TotalCoefficients {
    double axial = 0.0;
    double normal = 0.0;
    double moment = 0.0;
};

TotalCoefficients apply_uncertainty(const AeroCoefficients& c, const MassProperties& mass,
                                    const AeroModel& aero, const UncertaintyConfig& cfg);

struct BodyForces {
    double fx = 0.0;  // [N]
    double fz = 0.0;  // [N]
    double my = 0.0;  // [N m]
};

BodyForces forces_moments(const TotalCoefficients& c, double dynamic_pressure,
                          const AeroModel& aero);

/// Forces plus the intermediate quantities used to produce them.
struct PlantEvaluation {
    FlightCondition condition;
    AeroCoefficients nominal;
    TotalCoefficients total;
    BodyForces forces;
};

PlantEvaluation evaluate_plant(const LongitudinalState& state, double delta, double altitude,
                               const Airframe& airframe, const UncertaintyConfig& uncertainty);

/// Rigid-body pitch-plane equations of motion (no gravity).
StateDerivative state_derivative(const LongitudinalState& state, double delta, double altitude,
                                 const Airframe& airframe, const UncertaintyConfig& uncertainty);

/// Kinematic part only, for a given force set. Exposed for oracle tests.
StateDerivative rigid_body_derivative(const LongitudinalState& state, const BodyForces& forces,
                                      const MassProperties& mass);

}  // namespace agilepilot
