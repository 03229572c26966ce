#include "agilepilot/aero_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "agilepilot/errors.hpp"

namespace agilepilot {

namespace {

constexpr double kGridSlack = 1e-9;

struct Bracket {
    std::size_t lo;
    double frac;
};

// Locates `x` in a strictly increasing grid. A single-point grid is treated
// as constant in that axis.
Bracket bracket(const std::vector<double>& grid, double x, const std::string& table,
                const char* axis) {
    if (grid.size() == 1) return {0, 0.0};
    if (!(x >= grid.front() - kGridSlack && x <= grid.back() + kGridSlack)) {
        std::ostringstream os;
        os << table << ": " << axis << " = " << x << " outside table range ["
           << grid.front() << ", " << grid.back() << "]";
        throw FlightError(ErrorKind::OutOfEnvelope, os.str());
    }
    x = std::clamp(x, grid.front(), grid.back());
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - grid.begin());
    if (hi >= grid.size()) hi = grid.size() - 1;
    const std::size_t lo = hi - 1;
    return {lo, (x - grid[lo]) / (grid[hi] - grid[lo])};
}

void require_increasing(const std::vector<double>& grid, const std::string& what) {
    if (grid.empty()) throw FlightError(ErrorKind::Config, what + ": empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw FlightError(ErrorKind::Config, what + ": grid not strictly increasing");
        }
    }
}

void require_finite(const std::vector<double>& v, const std::string& what) {
    for (double x : v) {
        if (!std::isfinite(x)) throw FlightError(ErrorKind::Config, what + ": non-finite entry");
    }
}

}  // namespace

MachTable::MachTable(std::vector<double> mach, std::vector<double> values, std::string name)
    : mach_(std::move(mach)), values_(std::move(values)), name_(std::move(name)) {
    require_increasing(mach_, name_);
    require_finite(values_, name_);
    if (values_.size() != mach_.size()) {
        throw FlightError(ErrorKind::Config, name_ + ": value count does not match Mach grid");
    }
}

MachTable MachTable::constant(const std::vector<double>& mach, double value, std::string name) {
    return MachTable(mach, std::vector<double>(mach.size(), value), std::move(name));
}

double MachTable::operator()(double mach) const {
    const Bracket b = bracket(mach_, mach, name_, "Mach");
    if (mach_.size() == 1) return values_[0];
    return values_[b.lo] + b.frac * (values_[b.lo + 1] - values_[b.lo]);
}

AlphaMachTable::AlphaMachTable(std::vector<double> alpha_rad, std::vector<double> mach,
                               std::vector<double> values, std::string name)
    : alpha_(std::move(alpha_rad)),
      mach_(std::move(mach)),
      values_(std::move(values)),
      name_(std::move(name)) {
    require_increasing(alpha_, name_);
    require_increasing(mach_, name_);
    require_finite(values_, name_);
    if (values_.size() != alpha_.size() * mach_.size()) {
        throw FlightError(ErrorKind::Config, name_ + ": value matrix shape mismatch");
    }
}

double AlphaMachTable::operator()(double alpha, double mach) const {
    const Bracket a = bracket(alpha_, alpha, name_, "alpha");
    const Bracket m = bracket(mach_, mach, name_, "Mach");
    const std::size_t a1 = alpha_.size() == 1 ? a.lo : a.lo + 1;
    const std::size_t m1 = mach_.size() == 1 ? m.lo : m.lo + 1;
    const double v00 = at(a.lo, m.lo);
    const double v01 = at(a.lo, m1);
    const double v10 = at(a1, m.lo);
    const double v11 = at(a1, m1);
    const double lo = v00 + m.frac * (v01 - v00);
    const double hi = v10 + m.frac * (v11 - v10);
    return lo + a.frac * (hi - lo);
}

double AeroModel::peak_abs_cn0() const {
    double peak = 0.0;
    for (double v : cn0.values()) peak = std::max(peak, std::abs(v));
    return peak;
}

double AeroModel::peak_abs_cm0() const {
    double peak = 0.0;
    for (double v : cm0.values()) peak = std::max(peak, std::abs(v));
    return peak;
}

double AeroModel::min_abs_cm_delta() const {
    double lo = std::numeric_limits<double>::infinity();
    for (double v : cm_delta.values()) lo = std::min(lo, std::abs(v));
    return lo;
}

AeroModel synthetic_aero_model() {
    constexpr double deg = std::numbers::pi / 180.0;
    const std::vector<double> mach = {0.0, 0.5, 0.8, 1.0, 1.2, 1.5, 2.0, 2.5, 3.0, 4.0};
    // Normal-force slope scaling with Mach.
    const std::vector<double> kn = {0.90, 0.92, 0.95, 1.00, 1.05, 1.05, 1.00, 0.95, 0.90, 0.85};
    const std::vector<double> ca0 = {0.35, 0.35, 0.38, 0.55, 0.62, 0.58, 0.50, 0.45, 0.42, 0.38};

    // 2.5 deg spacing over [-90, 90]; the grid contains 0 exactly.
    std::vector<double> alpha;
    for (int i = -36; i <= 36; ++i) alpha.push_back(2.5 * i * deg);

    // Pitch control power well beyond what tail fins alone would give at these
    // reference dimensions, comparable to a thrust-vectored agile airframe.
    constexpr double cm_delta_0 = 1600.0;

    const std::size_t na = alpha.size();
    const std::size_t nm = mach.size();
    std::vector<double> cn0(na * nm), cn_delta(na * nm), cm0(na * nm), cm_delta(na * nm);
    for (std::size_t i = 0; i < na; ++i) {
        // Evaluate on |alpha| and mirror so the odd tables are exactly odd.
        const double a = std::abs(alpha[i]);
        const double sign = alpha[i] < 0.0 ? -1.0 : (alpha[i] > 0.0 ? 1.0 : 0.0);
        const double s = std::sin(a);
        const double c = std::cos(a);
        for (std::size_t j = 0; j < nm; ++j) {
            const std::size_t k = i * nm + j;
            cn0[k] = sign * kn[j] * (20.0 * s * c + 25.0 * s * s);
            cm0[k] = sign * (-kn[j] * 30.0 * s * c);
            cn_delta[k] = kn[j] * 1.5 * (1.0 - 0.5 * s * s);
            cm_delta[k] = -kn[j] * cm_delta_0 * (1.0 - 0.4 * s * s);
        }
    }

    AeroModel m;
    m.ca0 = MachTable(mach, ca0, "ca0");
    m.ca_alpha = MachTable::constant(mach, 0.0, "ca_alpha");
    m.ca_delta = MachTable::constant(mach, 1.5, "ca_delta");
    m.ca_thrust = MachTable::constant(mach, 0.0, "ca_thrust");
    m.cm_q = MachTable::constant(mach, -1500.0, "cm_q");
    m.cn0 = AlphaMachTable(alpha, mach, std::move(cn0), "cn0");
    m.cn_delta = AlphaMachTable(alpha, mach, std::move(cn_delta), "cn_delta");
    m.cm0 = AlphaMachTable(alpha, mach, std::move(cm0), "cm0");
    m.cm_delta = AlphaMachTable(alpha, mach, std::move(cm_delta), "cm_delta");
    m.reference_length = 0.127;
    m.reference_area = std::numbers::pi / 4.0 * m.reference_length * m.reference_length;
    return m;
}

void validate(const AeroModel& aero) {
    if (!(aero.reference_area > 0.0) || !(aero.reference_length > 0.0)) {
        throw FlightError(ErrorKind::Config, "reference area and length must be positive");
    }
    for (const AlphaMachTable* t : {&aero.cn0, &aero.cn_delta, &aero.cm0, &aero.cm_delta}) {
        if (t->values().empty()) throw FlightError(ErrorKind::Config, t->name() + ": empty table");
    }
    for (const MachTable* t : {&aero.ca0, &aero.ca_alpha, &aero.ca_delta, &aero.ca_thrust, &aero.cm_q}) {
        if (t->values().empty()) throw FlightError(ErrorKind::Config, t->name() + ": empty table");
    }
    // Symmetric airframe: no normal force or moment at zero incidence.
    const auto& grid = aero.cn0.mach();
    const bool has_zero = aero.alpha_min() <= 0.0 && aero.alpha_max() >= 0.0;
    if (has_zero) {
        for (double m : grid) {
            if (aero.cn0(0.0, m) != 0.0 || aero.cm0(0.0, m) != 0.0) {
                throw FlightError(ErrorKind::Config,
                                  "cn0 and cm0 must vanish at zero angle of attack");
            }
        }
    }
    const auto [lo, hi] = std::minmax_element(aero.cm_delta.values().begin(),
                                              aero.cm_delta.values().end());
    if (!(*hi < 0.0 || *lo > 0.0)) {
        throw FlightError(ErrorKind::Config, "cm_delta changes sign or vanishes inside the table");
    }
}

}  // namespace agilepilot
