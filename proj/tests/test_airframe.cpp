#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "agilepilot/airframe.hpp"
#include "agilepilot/errors.hpp"
#include "test_support.hpp"

using namespace agilepilot;
using agilepilot::testing::kDeg;
using agilepilot::testing::linear_aero_model;
using agilepilot::testing::reference_condition;

namespace {

constexpr double kFin = 0.05;

LongitudinalState reference_state() {
    const FlightCondition fc = reference_condition();
    LongitudinalState s;
    s.u = fc.speed * std::cos(fc.alpha);
    s.w = fc.speed * std::sin(fc.alpha);
    s.q = fc.q;
    return s;
}

}  // namespace

TEST(AeroCoefficients, HandComputedBuildup) {
    const AeroModel aero = linear_aero_model();
    const FlightCondition fc = reference_condition();
    const AeroCoefficients c =
        aero_coefficients(fc.alpha, fc.atmos.mach, kFin, fc.q, fc.speed, fc.mass, aero);
    EXPECT_NEAR(c.axial(), 0.4609375, 1e-15);
    EXPECT_NEAR(c.normal(), 2.3, 1e-14);
    EXPECT_NEAR(c.normal_fin, 0.3, 1e-15);
    EXPECT_NEAR(c.moment, -7.5209547244094488, 1e-13);
}

TEST(AeroCoefficients, FinAxialDragIsEven) {
    const AeroModel aero = linear_aero_model();
    const FlightCondition fc = reference_condition();
    const auto plus = aero_coefficients(fc.alpha, fc.atmos.mach, 0.2, fc.q, fc.speed, fc.mass, aero);
    const auto minus = aero_coefficients(fc.alpha, fc.atmos.mach, -0.2, fc.q, fc.speed, fc.mass, aero);
    EXPECT_DOUBLE_EQ(plus.axial_fin, minus.axial_fin);
    EXPECT_DOUBLE_EQ(plus.normal_fin, -minus.normal_fin);
}

TEST(Forces, ScaleWithDynamicPressure) {
    const AeroModel aero = linear_aero_model();
    const FlightCondition fc = reference_condition();
    const auto c = aero_coefficients(fc.alpha, fc.atmos.mach, kFin, fc.q, fc.speed, fc.mass, aero);
    const auto t = apply_uncertainty(c, fc.mass, aero, UncertaintyConfig::nominal());
    const BodyForces f = forces_moments(t, fc.atmos.dynamic_pressure, aero);
    EXPECT_NEAR(f.fx, -263.42578125, 1e-10);
    EXPECT_NEAR(f.fz, -1314.45, 1e-9);
    EXPECT_NEAR(f.my, -545.874654375, 1e-9);
}

TEST(RigidBody, ReferenceDerivatives) {
    const AeroModel aero = linear_aero_model();
    const FlightCondition fc = reference_condition();
    const auto c = aero_coefficients(fc.alpha, fc.atmos.mach, kFin, fc.q, fc.speed, fc.mass, aero);
    const auto f = forces_moments(apply_uncertainty(c, fc.mass, aero, UncertaintyConfig::nominal()),
                                  fc.atmos.dynamic_pressure, aero);
    const LongitudinalState s = reference_state();
    const StateDerivative d = rigid_body_derivative(s, f, fc.mass);
    EXPECT_NEAR(d.u_dot, 84.232165237350777, 1e-11);
    EXPECT_NEAR(d.w_dot, 132.81999979170386, 1e-11);
    EXPECT_NEAR(d.q_dot, -12.130547875, 1e-11);
    EXPECT_DOUBLE_EQ(d.theta_dot, fc.q);

    const double alpha_dot = (s.u * d.w_dot - s.w * d.u_dot) / (fc.speed * fc.speed);
    EXPECT_NEAR(alpha_dot, 0.41249089392588982, 1e-12);
}

TEST(RigidBody, PowerBalance) {
    // Rotation does no work: m (u u' + w w') equals the power of the applied forces.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> v(-500.0, 500.0);
    for (int i = 0; i < 200; ++i) {
        LongitudinalState s;
        s.u = 50.0 + std::abs(v(rng));
        s.w = v(rng) / 2.0;
        s.q = v(rng) / 100.0;
        const BodyForces f{v(rng) * 10.0, v(rng) * 10.0, v(rng)};
        MassProperties m{70.0 + std::abs(v(rng)) / 50.0, 40.0, 1.5, 1.55, std::abs(v(rng)) * 10.0};
        const StateDerivative d = rigid_body_derivative(s, f, m);
        const double lhs = m.mass * (s.u * d.u_dot + s.w * d.w_dot);
        const double rhs = (f.fx + m.thrust) * s.u + f.fz * s.w;
        EXPECT_NEAR(lhs, rhs, 1e-9 * (std::abs(rhs) + 1.0));
    }
}

TEST(RigidBody, PositionFollowsVelocityHeading) {
    LongitudinalState s;
    s.u = 200.0;
    s.w = 0.0;
    s.theta = 30.0 * kDeg;
    const StateDerivative d = rigid_body_derivative(s, {}, MassProperties{80, 40, 1.5, 1.5, 0});
    EXPECT_NEAR(d.x_dot, 200.0 * std::cos(30.0 * kDeg), 1e-12);
    EXPECT_NEAR(d.y_dot, 200.0 * std::sin(30.0 * kDeg), 1e-12);
}

TEST(MassProperties, BoostSchedule) {
    const BoostSchedule b;
    const MassProperties launch = mass_properties(0.0, b);
    EXPECT_DOUBLE_EQ(launch.mass, 90.0);
    EXPECT_DOUBLE_EQ(launch.iyy, 50.0);
    EXPECT_DOUBLE_EQ(launch.xcg, 1.55);
    EXPECT_DOUBLE_EQ(launch.cg_shift(), 0.0);
    EXPECT_DOUBLE_EQ(launch.thrust, 8200.0);

    const MassProperties mid = mass_properties(1.25, b);
    EXPECT_NEAR(mid.mass, 77.5, 1e-12);
    EXPECT_NEAR(mid.iyy, 44.0, 1e-12);
    EXPECT_NEAR(mid.xcg, 1.535, 1e-12);

    const MassProperties burnout = mass_properties(2.5, b);
    EXPECT_DOUBLE_EQ(burnout.mass, 65.0);
    EXPECT_DOUBLE_EQ(burnout.thrust, 8200.0);

    const MassProperties coast = mass_properties(3.0, b);
    EXPECT_DOUBLE_EQ(coast.mass, 65.0);
    EXPECT_DOUBLE_EQ(coast.xcg, 1.52);
    EXPECT_DOUBLE_EQ(coast.thrust, 0.0);
    EXPECT_NEAR(coast.cg_shift(), 0.03, 1e-12);
}

TEST(FlightCondition, EnforcesEnvelope) {
    const BoostSchedule b;
    LongitudinalState s;
    EXPECT_THROW(
        {
            try {
                flight_condition(s, 2000.0, b);
            } catch (const FlightError& e) {
                EXPECT_EQ(e.kind(), ErrorKind::SingularFlight);
                throw;
            }
        },
        FlightError);

    s.u = -10.0;
    s.w = 1.0;
    try {
        flight_condition(s, 2000.0, b);
        FAIL();
    } catch (const FlightError& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OutOfEnvelope);
    }

    s.u = 250.0 * std::cos(0.3);
    s.w = 250.0 * std::sin(0.3);
    const FlightCondition fc = flight_condition(s, 2000.0, b);
    EXPECT_NEAR(fc.alpha, 0.3, 1e-14);
    EXPECT_NEAR(fc.speed, 250.0, 1e-12);
    EXPECT_NEAR(fc.atmos.dynamic_pressure, 31452.815545706362, 1e-8);
}

TEST(Uncertainty, PerfectModelDropsFinForce) {
    const AeroModel aero = linear_aero_model();
    const FlightCondition fc = reference_condition();
    const auto c = aero_coefficients(fc.alpha, fc.atmos.mach, kFin, fc.q, fc.speed, fc.mass, aero);
    const auto t = apply_uncertainty(c, fc.mass, aero, UncertaintyConfig::perfect_model());
    EXPECT_DOUBLE_EQ(t.normal, c.normal_body);
    EXPECT_DOUBLE_EQ(t.axial, c.axial_body);
    EXPECT_DOUBLE_EQ(t.moment, c.moment);
}

TEST(Uncertainty, ScalingAndCoupling) {
    const AeroModel aero = linear_aero_model();
    const FlightCondition fc = reference_condition();
    const auto c = aero_coefficients(fc.alpha, fc.atmos.mach, kFin, fc.q, fc.speed, fc.mass, aero);
    UncertaintyConfig cfg;
    cfg.delta_pert = 0.3;
    cfg.coupling_cn = 0.5;
    cfg.coupling_cm = -0.2;
    const auto t = apply_uncertainty(c, fc.mass, aero, cfg);
    EXPECT_NEAR(t.normal, 1.3 * 2.3 + 0.5, 1e-13);
    EXPECT_NEAR(t.axial, 1.3 * 0.4609375, 1e-13);
    EXPECT_NEAR(t.moment, 1.3 * c.moment - 0.2 - 0.5 * 0.02 / 0.127, 1e-12);

    cfg.coupling_enabled = false;
    cfg.multiplicative_enabled = false;
    const auto off = apply_uncertainty(c, fc.mass, aero, cfg);
    EXPECT_DOUBLE_EQ(off.normal, c.normal());
}

TEST(AeroCoefficients, SymmetricAtZeroIncidence) {
    const AeroModel aero = agilepilot::synthetic_aero_model();
    MassProperties m{80.0, 45.0, 1.55, 1.55, 0.0};
    const AeroCoefficients c = aero_coefficients(0.0, 0.9, 0.0, 0.0, 300.0, m, aero);
    EXPECT_EQ(c.normal(), 0.0);
    EXPECT_EQ(c.moment, 0.0);
    EXPECT_DOUBLE_EQ(c.axial(), aero.ca0(0.9) + aero.ca_thrust(0.9));
}

TEST(Forces, SimpleSubstitutions) {
    const AeroModel aero = linear_aero_model();
    const BodyForces zero = forces_moments({0.4, 2.0, -1.0}, 0.0, aero);
    EXPECT_EQ(zero.fx, 0.0);
    EXPECT_EQ(zero.fz, 0.0);
    EXPECT_EQ(zero.my, 0.0);

    const double q = 1000.0 / aero.reference_area;
    const BodyForces axial = forces_moments({1.0, 0.0, 0.0}, q, aero);
    EXPECT_NEAR(axial.fx, -1000.0, 1e-9);
    EXPECT_EQ(axial.fz, 0.0);
    EXPECT_EQ(axial.my, 0.0);
    EXPECT_LT(forces_moments({0.0, 0.5, 0.0}, q, aero).fz, 0.0);
}

TEST(RigidBody, KinematicCouplingAndEquilibrium) {
    const MassProperties m{80.0, 45.0, 1.5, 1.5, 0.0};
    LongitudinalState s;
    s.u = 100.0;
    s.q = 1.0;
    StateDerivative d = rigid_body_derivative(s, {}, m);
    EXPECT_EQ(d.u_dot, 0.0);
    EXPECT_EQ(d.w_dot, 100.0);
    EXPECT_EQ(d.q_dot, 0.0);

    s.q = 0.0;
    s.w = 30.0;
    d = rigid_body_derivative(s, {}, m);
    EXPECT_EQ(d.u_dot, 0.0);
    EXPECT_EQ(d.w_dot, 0.0);
    EXPECT_EQ(d.q_dot, 0.0);
}

TEST(RigidBody, SpeedConstantWithoutForces) {
    // A pitching body with no thrust or aerodynamic load keeps its speed;
    // only the direction of the body axes relative to the velocity changes.
    const MassProperties m{80.0, 45.0, 1.5, 1.5, 0.0};
    std::array<double, 3> x{250.0, 10.0, 2.0};
    const double v0 = std::hypot(x[0], x[1]);
    auto f = [&](const std::array<double, 3>& y) {
        LongitudinalState s;
        s.u = y[0];
        s.w = y[1];
        s.q = y[2];
        const StateDerivative d = rigid_body_derivative(s, {}, m);
        return std::array<double, 3>{d.u_dot, d.w_dot, d.q_dot};
    };
    const double dt = 1e-3;
    for (int k = 0; k < 2000; ++k) {
        const auto k1 = f(x);
        std::array<double, 3> y;
        for (int i = 0; i < 3; ++i) y[i] = x[i] + 0.5 * dt * k1[i];
        const auto k2 = f(y);
        for (int i = 0; i < 3; ++i) y[i] = x[i] + 0.5 * dt * k2[i];
        const auto k3 = f(y);
        for (int i = 0; i < 3; ++i) y[i] = x[i] + dt * k3[i];
        const auto k4 = f(y);
        for (int i = 0; i < 3; ++i) x[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    EXPECT_NEAR(std::hypot(x[0], x[1]), v0, 1e-9 * v0);
    EXPECT_NEAR(x[2], 2.0, 0.0);
}

TEST(MassProperties, CgShiftAffineDuringBoost) {
    const BoostSchedule b;
    const double s0 = mass_properties(0.5, b).cg_shift();
    const double s1 = mass_properties(1.0, b).cg_shift();
    const double s2 = mass_properties(1.5, b).cg_shift();
    EXPECT_NEAR(s2 - s1, s1 - s0, 1e-15);
    EXPECT_GT(mass_properties(2.5, b).mass, 0.0);
}
