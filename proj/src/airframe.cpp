#include "agilepilot/airframe.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "agilepilot/errors.hpp"

namespace agilepilot {

MassProperties mass_properties(double t, const BoostSchedule& boost) {
    MassProperties m;
    m.xcg_ref = boost.xcg_ref;
    if (t <= boost.t_burnout) {
        const double f = boost.t_burnout > 0.0 ? std::max(t, 0.0) / boost.t_burnout : 1.0;
        // Endpoint-exact form: f == 0 gives launch values, f == 1 burnout values.
        auto lerp = [f](double a, double b) { return (1.0 - f) * a + f * b; };
        m.mass = lerp(boost.mass_launch, boost.mass_burnout);
        m.iyy = lerp(boost.iyy_launch, boost.iyy_burnout);
        m.xcg = lerp(boost.xcg_launch, boost.xcg_burnout);
        m.thrust = boost.thrust;
    } else {
        m.mass = boost.mass_burnout;
        m.iyy = boost.iyy_burnout;
        m.xcg = boost.xcg_burnout;
        m.thrust = 0.0;
    }
    return m;
}

Airframe synthetic_airframe() {
    Airframe a;
    a.aero = synthetic_aero_model();
    return a;
}

FlightCondition flight_condition(const LongitudinalState& state, double altitude,
                                 const BoostSchedule& boost) {
    FlightCondition fc;
    fc.speed = state.speed();
    if (!(fc.speed > 0.0)) {
        throw FlightError(ErrorKind::SingularFlight, "airspeed is zero");
    }
    fc.alpha = state.alpha();
    if (std::abs(fc.alpha) > kAlphaEnvelope) {
        std::ostringstream os;
        os << "angle of attack " << fc.alpha * 180.0 / std::numbers::pi << " deg outside +/-90 deg envelope";
        throw FlightError(ErrorKind::OutOfEnvelope, os.str());
    }
    fc.q = state.q;
    fc.atmos = atmosphere(altitude, fc.speed);
    fc.mass = mass_properties(state.t, boost);
    return fc;
}

AeroCoefficients aero_coefficients(double alpha, double mach, double delta, double q,
                                   double speed, const MassProperties& mass,
                                   const AeroModel& aero) {
    const double l = aero.reference_length;
    const double half_fin = std::abs(delta) / 2.0;

    AeroCoefficients c;
    c.axial_body = aero.ca0(mach) + aero.ca_alpha(mach) * alpha + aero.ca_thrust(mach);
    c.axial_fin = aero.ca_delta(mach) * half_fin * half_fin;
    c.normal_body = aero.cn0(alpha, mach);
    c.normal_fin = aero.cn_delta(alpha, mach) * delta;
    c.moment = aero.cm0(alpha, mach) + aero.cm_q(mach) * q * l / (2.0 * speed) +
               aero.cm_delta(alpha, mach) * delta - c.normal() * mass.cg_shift() / l;
    return c;
}

TotalCoefficients apply_uncertainty(const AeroCoefficients& c, const MassProperties& mass,
                                    const AeroModel& aero, const UncertaintyConfig& cfg) {
    const double k = cfg.aero_scale();
    const double cn_phi = cfg.cn_coupling();
    const double fin_axial = cfg.inject_h1 ? c.axial_fin : 0.0;
    const double fin_normal = cfg.inject_h1 ? c.normal_fin : 0.0;

    TotalCoefficients t;
    t.axial = k * (c.axial_body + fin_axial);
    t.normal = k * (c.normal_body + fin_normal) + cn_phi;
    t.moment = k * c.moment + cfg.cm_coupling() - cn_phi * mass.cg_shift() / aero.reference_length;
    return t;
}

BodyForces forces_moments(const TotalCoefficients& c, double dynamic_pressure,
                          const AeroModel& aero) {
    const double qs = dynamic_pressure * aero.reference_area;
    return {-qs * c.axial, -qs * c.normal, qs * aero.reference_length * c.moment};
}

PlantEvaluation evaluate_plant(const LongitudinalState& state, double delta, double altitude,
                               const Airframe& airframe, const UncertaintyConfig& uncertainty) {
    PlantEvaluation e;
    e.condition = flight_condition(state, altitude, airframe.boost);
    const FlightCondition& fc = e.condition;
    e.nominal = aero_coefficients(fc.alpha, fc.atmos.mach, delta, fc.q, fc.speed, fc.mass,
                                  airframe.aero);
    e.total = apply_uncertainty(e.nominal, fc.mass, airframe.aero, uncertainty);
    e.forces = forces_moments(e.total, fc.atmos.dynamic_pressure, airframe.aero);
    return e;
}

StateDerivative rigid_body_derivative(const LongitudinalState& s, const BodyForces& f,
                                      const MassProperties& m) {
    StateDerivative d;
    d.u_dot = -s.w * s.q + (f.fx + m.thrust) / m.mass;
    d.w_dot = s.u * s.q + f.fz / m.mass;
    d.q_dot = f.my / m.iyy;
    d.theta_dot = s.q;
    const double speed = s.speed();
    const double heading = s.heading();
    d.x_dot = speed * std::cos(heading);
    d.y_dot = speed * std::sin(heading);
    return d;
}

StateDerivative state_derivative(const LongitudinalState& state, double delta, double altitude,
                                 const Airframe& airframe, const UncertaintyConfig& uncertainty) {
    const PlantEvaluation e = evaluate_plant(state, delta, altitude, airframe, uncertainty);
    return rigid_body_derivative(state, e.forces, e.condition.mass);
}

}  // namespace agilepilot
