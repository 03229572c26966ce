#include "agilepilot/feedback_form.hpp"

#include <cmath>
#include <sstream>

#include "agilepilot/errors.hpp"

namespace agilepilot {

namespace {

// QS/(mV)
double force_scale(const FlightCondition& fc, const AeroModel& aero) {
    if (!(fc.speed > 0.0)) throw FlightError(ErrorKind::SingularFlight, "airspeed is zero");
    return fc.atmos.dynamic_pressure * aero.reference_area / (fc.mass.mass * fc.speed);
}

// QSl/Iyy
double moment_scale(const FlightCondition& fc, const AeroModel& aero) {
    if (!(fc.speed > 0.0)) throw FlightError(ErrorKind::SingularFlight, "airspeed is zero");
    return fc.atmos.dynamic_pressure * aero.reference_area * aero.reference_length / fc.mass.iyy;
}

}  // namespace

double eval_f1(const FlightCondition& fc, const AeroModel& aero, double aero_scale) {
    const double mach = fc.atmos.mach;
    const double a = fc.alpha;
    const double cn0 = aero.cn0(a, mach);
    const double ca = aero.ca0(mach) + aero.ca_alpha(mach) * a + aero.ca_thrust(mach);
    const double aero_part =
        -force_scale(fc, aero) * aero_scale * (cn0 * std::cos(a) - ca * std::sin(a));
    return aero_part - fc.mass.thrust * std::sin(a) / (fc.mass.mass * fc.speed);
}

double eval_f2(const FlightCondition& fc, const AeroModel& aero, double aero_scale) {
    const double mach = fc.atmos.mach;
    const double l = aero.reference_length;
    const double bracket = aero.cm0(fc.alpha, mach) +
                           aero.cm_q(mach) * fc.q * l / (2.0 * fc.speed) -
                           aero.cn0(fc.alpha, mach) * fc.mass.cg_shift() / l;
    return moment_scale(fc, aero) * aero_scale * bracket;
}

double eval_h1(const FlightCondition& fc, double delta, const AeroModel& aero, double aero_scale) {
    const double mach = fc.atmos.mach;
    const double half_fin = std::abs(delta) / 2.0;
    const double bracket = aero.cn_delta(fc.alpha, mach) * delta * std::cos(fc.alpha) -
                           aero.ca_delta(mach) * half_fin * half_fin * std::sin(fc.alpha);
    return -force_scale(fc, aero) * aero_scale * bracket;
}

double eval_h2(const FlightCondition& fc, const AeroModel& aero, double aero_scale,
               double effectiveness_floor) {
    const double mach = fc.atmos.mach;
    const double bracket = aero.cm_delta(fc.alpha, mach) -
                           aero.cn_delta(fc.alpha, mach) * fc.mass.cg_shift() / aero.reference_length;
    if (!(std::abs(bracket) >= effectiveness_floor)) {
        std::ostringstream os;
        os << "control effectiveness " << bracket << " below floor " << effectiveness_floor
           << " at alpha " << fc.alpha << " rad, Mach " << mach;
        throw FlightError(ErrorKind::EffectivenessLoss, os.str());
    }
    return moment_scale(fc, aero) * aero_scale * bracket;
}

CouplingTerms eval_coupling(const FlightCondition& fc, const AeroModel& aero,
                            const UncertaintyConfig& cfg) {
    const double cn_phi = cfg.cn_coupling();
    const double cm_phi = cfg.cm_coupling();
    CouplingTerms g;
    g.g1 = -force_scale(fc, aero) * cn_phi * std::cos(fc.alpha);
    g.g2 = moment_scale(fc, aero) *
           (cm_phi - cn_phi * fc.mass.cg_shift() / aero.reference_length);
    return g;
}

StrictFeedbackTerms eval_terms(const FlightCondition& fc, double delta, const AeroModel& aero,
                               double aero_scale, double effectiveness_floor) {
    StrictFeedbackTerms t;
    t.f1 = eval_f1(fc, aero, aero_scale);
    t.f2 = eval_f2(fc, aero, aero_scale);
    t.h1 = eval_h1(fc, delta, aero, aero_scale);
    t.h2 = eval_h2(fc, aero, aero_scale, effectiveness_floor);
    return t;
}

Uncertainties truth_uncertainties(const StrictFeedbackTerms& nominal,
                                  const StrictFeedbackTerms& perturbed,
                                  const CouplingTerms& coupling, double delta, bool inject_h1) {
    Uncertainties d;
    d.delta1 = (perturbed.f1 - nominal.f1) + coupling.g1 + (inject_h1 ? perturbed.h1 : 0.0);
    d.delta2 = (perturbed.f2 - nominal.f2) + (perturbed.h2 - nominal.h2) * delta + coupling.g2;
    return d;
}

Uncertainties truth_uncertainties(const FlightCondition& fc, double delta, const AeroModel& aero,
                                  const UncertaintyConfig& cfg) {
    // The floor is irrelevant to bookkeeping; the controller enforces its own.
    const StrictFeedbackTerms nominal = eval_terms(fc, delta, aero, 1.0, 0.0);
    const StrictFeedbackTerms perturbed = eval_terms(fc, delta, aero, cfg.aero_scale(), 0.0);
    return truth_uncertainties(nominal, perturbed, eval_coupling(fc, aero, cfg), delta,
                               cfg.inject_h1);
}

}  // namespace agilepilot
