#pragma once

#include <stdexcept>
#include <string>

namespace agilepilot {

enum class ErrorKind {
    OutOfEnvelope,       // altitude, alpha or Mach outside the modeled range
    SingularFlight,      // V == 0
    EffectivenessLoss,   // |h2| below the configured floor
    Diverged,            // non-finite state or derivative
    Config,              // invalid scenario / airframe / sweep description
    Parse,               // malformed input file
};

const char* to_string(ErrorKind kind);

class FlightError : public std::runtime_error {
public:
    FlightError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace agilepilot
