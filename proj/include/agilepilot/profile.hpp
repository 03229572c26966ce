#pragma once

#include <filesystem>
#include <istream>
#include <vector>

namespace agilepilot {

/// Time-indexed command. Linear interpolation between samples, last value
/// held beyond the final sample and first value held before the first.
class CommandProfile {
public:
    CommandProfile() = default;
    CommandProfile(std::vector<double> times, std::vector<double> values);

    double operator()(double t) const;

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }
    bool empty() const { return times_.empty(); }

private:
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Parses a two-column CSV (t, value). A non-numeric first line is treated
/// as a header; blank lines and lines starting with '#' are skipped. Values
/// are multiplied by `value_scale`. Throws FlightError(Parse) with the
/// offending line number on malformed input or non-increasing time.
CommandProfile parse_profile(std::istream& in, double value_scale = 1.0,
                             const std::string& source = "<stream>");

CommandProfile load_profile(const std::filesystem::path& path, double value_scale = 1.0);

/// Alpha profile in (t_seconds, alpha_deg); values returned in radians.
CommandProfile load_alpha_profile(const std::filesystem::path& path);

}  // namespace agilepilot
