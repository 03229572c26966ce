#include "agilepilot/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "agilepilot/errors.hpp"

namespace agilepilot {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view text, double& out) {
    text = trim(text);
    if (text.empty()) return false;
    // from_chars rejects a leading '+'.
    if (text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw FlightError(ErrorKind::Parse, source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

CommandProfile::CommandProfile(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
    if (times_.size() != values_.size() || times_.empty()) {
        throw FlightError(ErrorKind::Config, "profile needs matching, non-empty time/value arrays");
    }
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1])) {
            throw FlightError(ErrorKind::Config, "profile times must be strictly increasing");
        }
    }
}

double CommandProfile::operator()(double t) const {
    if (t <= times_.front()) return values_.front();
    if (t >= times_.back()) return values_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
    const std::size_t lo = hi - 1;
    const double f = (t - times_[lo]) / (times_[hi] - times_[lo]);
    return values_[lo] + f * (values_[hi] - values_[lo]);
}

CommandProfile parse_profile(std::istream& in, double value_scale, const std::string& source) {
    std::vector<double> times, values;
    std::string raw;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const auto comma = line.find(',');
        if (comma == std::string_view::npos) fail(source, line_no, "expected two comma-separated columns");
        const std::string_view first = line.substr(0, comma);
        const std::string_view second = line.substr(comma + 1);
        if (second.find(',') != std::string_view::npos) {
            fail(source, line_no, "expected exactly two columns");
        }

        double t = 0.0, v = 0.0;
        const bool ok_t = parse_number(first, t);
        const bool ok_v = parse_number(second, v);
        if (!ok_t || !ok_v) {
            if (!seen_content && !ok_t) {
                seen_content = true;  // header row
                continue;
            }
            fail(source, line_no, "non-numeric value");
        }
        seen_content = true;
        if (!times.empty() && !(t > times.back())) {
            fail(source, line_no, "time not strictly increasing");
        }
        times.push_back(t);
        values.push_back(v * value_scale);
    }
    if (times.empty()) fail(source, line_no, "profile contains no samples");
    return CommandProfile(std::move(times), std::move(values));
}

CommandProfile load_profile(const std::filesystem::path& path, double value_scale) {
    std::ifstream in(path);
    if (!in) throw FlightError(ErrorKind::Parse, "cannot open profile " + path.string());
    return parse_profile(in, value_scale, path.string());
}

CommandProfile load_alpha_profile(const std::filesystem::path& path) {
    return load_profile(path, std::numbers::pi / 180.0);
}

}  // namespace agilepilot
