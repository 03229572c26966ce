#pragma once

#include "agilepilot/aero_model.hpp"
#include "agilepilot/airframe.hpp"
#include "agilepilot/uncertainty.hpp"

namespace agilepilot {

/// Strict-feedback decomposition of the pitch dynamics,
///
///   alpha_dot = f1 + q + h1(delta) + g1
///   q_dot     = f2 + h2 * delta + g2
///
/// evaluated at one flight condition.
struct StrictFeedbackTerms {
    double f1 = 0.0;  // [1/s]
    double f2 = 0.0;  // [1/s^2]
    double h1 = 0.0;  // [1/s] at the given delta
    double h2 = 0.0;  // [1/s^2 per rad]
    double g1 = 0.0;  // [1/s]
    double g2 = 0.0;  // [1/s^2]
};

/// Minimum |C_Md - C_Nd * x_cg,s / l| accepted before h2 is declared lost.
inline constexpr double kDefaultEffectivenessFloor = 1e-3;

// `aero_scale` multiplies the aerodynamic buildup; 1 is the nominal model.
double eval_f1(const FlightCondition& fc, const AeroModel& aero, double aero_scale = 1.0);
double eval_f2(const FlightCondition& fc, const AeroModel& aero, double aero_scale = 1.0);
double eval_h1(const FlightCondition& fc, double delta, const AeroModel& aero,
               double aero_scale = 1.0);
double eval_h2(const FlightCondition& fc, const AeroModel& aero, double aero_scale = 1.0,
               double effectiveness_floor = kDefaultEffectivenessFloor);

struct CouplingTerms {
    double g1 = 0.0;
    double g2 = 0.0;
};

/// Worst-case roll-coupling terms. g2 includes the CG transfer of the
/// coupling normal force, so it reduces to (QSl/Iyy)*dC_Mphi when
/// x_cg = x_cg,ref.
CouplingTerms eval_coupling(const FlightCondition& fc, const AeroModel& aero,
                            const UncertaintyConfig& cfg);

/// All six terms. With `aero_scale == 1` and no coupling this is the
/// controller's model.
StrictFeedbackTerms eval_terms(const FlightCondition& fc, double delta, const AeroModel& aero,
                               double aero_scale = 1.0,
                               double effectiveness_floor = kDefaultEffectivenessFloor);

struct Uncertainties {
    double delta1 = 0.0;  // [1/s]
    double delta2 = 0.0;  // [1/s^2]
};

/// Lumped terms the nominal model misses, such that
///   alpha_dot = f1_nom + q + delta1,  q_dot = f2_nom + h2_nom*delta + delta2
/// hold exactly for the truth plant.
Uncertainties truth_uncertainties(const StrictFeedbackTerms& nominal,
                                  const StrictFeedbackTerms& perturbed,
                                  const CouplingTerms& coupling, double delta, bool inject_h1);

/// Convenience: evaluates both term sets at `fc` and combines them.
Uncertainties truth_uncertainties(const FlightCondition& fc, double delta, const AeroModel& aero,
                                  const UncertaintyConfig& cfg);

}  // namespace agilepilot
