#include "agilepilot/errors.hpp"

namespace agilepilot {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::OutOfEnvelope: return "out_of_envelope";
        case ErrorKind::SingularFlight: return "singular_flight_condition";
        case ErrorKind::EffectivenessLoss: return "control_effectiveness_loss";
        case ErrorKind::Diverged: return "simulation_diverged";
        case ErrorKind::Config: return "config_error";
        case ErrorKind::Parse: return "parse_error";
    }
    return "unknown";
}

}  // namespace agilepilot
