#pragma once

#include <span>
#include <string>
#include <vector>

namespace agilepilot {

/// Piecewise-linear function of Mach. Queries outside the grid throw
/// OutOfEnvelope rather than extrapolate.
class MachTable {
public:
    MachTable() = default;
    MachTable(std::vector<double> mach, std::vector<double> values, std::string name = {});

    double operator()(double mach) const;

    const std::vector<double>& mach() const { return mach_; }
    const std::vector<double>& values() const { return values_; }
    const std::string& name() const { return name_; }

    static MachTable constant(const std::vector<double>& mach, double value, std::string name = {});

private:
    std::vector<double> mach_;
    std::vector<double> values_;
    std::string name_;
};

/// Bilinear table over (alpha, Mach). Alpha is stored in radians; the value
/// matrix is row-major with one row per alpha breakpoint.
class AlphaMachTable {
public:
    AlphaMachTable() = default;
    AlphaMachTable(std::vector<double> alpha_rad, std::vector<double> mach,
                   std::vector<double> values, std::string name = {});

    double operator()(double alpha, double mach) const;

    const std::vector<double>& alpha() const { return alpha_; }
    const std::vector<double>& mach() const { return mach_; }
    const std::vector<double>& values() const { return values_; }
    const std::string& name() const { return name_; }

    double at(std::size_t alpha_index, std::size_t mach_index) const {
        return values_[alpha_index * mach_.size() + mach_index];
    }

private:
    std::vector<double> alpha_;
    std::vector<double> mach_;
    std::vector<double> values_;
    std::string name_;
};

/// Coefficient buildup tables. Normal-force and moment coefficients are
/// referenced to `reference_area`; moments additionally to `reference_length`.
struct AeroModel {
    MachTable ca0;             // zero-incidence axial
    MachTable ca_alpha;        // axial per rad of alpha
    MachTable ca_delta;        // axial per (|delta|/2)^2
    MachTable ca_thrust;       // thrust-induced axial increment
    AlphaMachTable cn0;        // normal force, fin neutral
    AlphaMachTable cn_delta;   // normal force per rad of fin
    AlphaMachTable cm0;        // pitching moment, fin neutral, about x_cg_ref
    MachTable cm_q;            // pitch damping per ql/(2V)
    AlphaMachTable cm_delta;   // pitching moment per rad of fin

    double reference_area = 0.0;    // [m^2]
    double reference_length = 0.0;  // [m]

    double alpha_min() const { return cn0.alpha().front(); }
    double alpha_max() const { return cn0.alpha().back(); }
    double mach_min() const { return cn0.mach().front(); }
    double mach_max() const { return cn0.mach().back(); }

    /// Largest |cn0| and |cm0| over all table breakpoints.
    double peak_abs_cn0() const;
    double peak_abs_cm0() const;

    /// Smallest |cm_delta| over all table breakpoints.
    double min_abs_cm_delta() const;
};

/// Synthetic short-range air-to-air airframe. Normal force grows with
/// sin(2a)/2 plus a crossflow sin(a)|sin(a)| term; the airframe is
/// statically stable with stability fading to neutral at 90 deg.
AeroModel synthetic_aero_model();

/// Checks table shapes, monotone grids, finiteness and the zero-incidence
/// symmetry conditions. Throws FlightError(Config) on violation.
void validate(const AeroModel& aero);

}  // namespace agilepilot
