#include <gtest/gtest.h>

#include "agilepilot/atmosphere.hpp"
#include "agilepilot/errors.hpp"

using namespace agilepilot;

// Reference values: troposphere formulas evaluated in 30-digit arithmetic.
TEST(Atmosphere, TwoThousandMetres) {
    const AtmosphereSample s = atmosphere(2000.0, 250.0);
    EXPECT_NEAR(s.density, 1.0064900974626036, 1e-13);
    EXPECT_NEAR(s.speed_of_sound, 332.52915068110946, 1e-10);
    EXPECT_NEAR(s.dynamic_pressure, 31452.815545706362, 1e-8);
    EXPECT_NEAR(s.mach, 0.75181378681517851, 1e-14);
}

TEST(Atmosphere, SeaLevelMatchesStandardDay) {
    const AtmosphereSample s = atmosphere(0.0, 0.0);
    EXPECT_NEAR(s.density, us76::sea_level_pressure / (us76::gas_constant * us76::sea_level_temperature),
                1e-15);
    EXPECT_NEAR(s.speed_of_sound, 340.294, 1e-3);
    EXPECT_EQ(s.dynamic_pressure, 0.0);
    EXPECT_EQ(s.mach, 0.0);
}

TEST(Atmosphere, DensityFallsWithAltitude) {
    double previous = atmosphere(0.0, 100.0).density;
    for (double h = 500.0; h <= 11000.0; h += 500.0) {
        const double rho = atmosphere(h, 100.0).density;
        EXPECT_LT(rho, previous) << h;
        previous = rho;
    }
}

TEST(Atmosphere, RejectsOutOfRange) {
    for (double h : {-1.0, 11000.5, 20000.0}) {
        try {
            atmosphere(h, 100.0);
            FAIL() << "no throw at " << h;
        } catch (const FlightError& e) {
            EXPECT_EQ(e.kind(), ErrorKind::OutOfEnvelope);
        }
    }
    EXPECT_THROW(atmosphere(1000.0, -1.0), FlightError);
}

TEST(Atmosphere, MachOneAtLocalSpeedOfSound) {
    const double a = atmosphere(2000.0, 0.0).speed_of_sound;
    EXPECT_EQ(atmosphere(2000.0, a).mach, 1.0);
}
