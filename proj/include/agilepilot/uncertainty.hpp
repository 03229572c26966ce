#pragma once

namespace agilepilot {

/// Model errors felt by the truth plant only. The controller always works
/// from the nominal tables.
struct UncertaintyConfig {
    double delta_pert = 0.0;   // multiplicative scale on C_A, C_N, C_M: (1 + delta_pert)
    double coupling_cn = 0.0;  // additive worst-case (phi = 45 deg) normal coefficient
    double coupling_cm = 0.0;  // additive worst-case pitching-moment coefficient
    bool inject_h1 = true;     // truth plant feels the fin normal/axial force
    bool multiplicative_enabled = true;
    bool coupling_enabled = true;

    double aero_scale() const { return multiplicative_enabled ? 1.0 + delta_pert : 1.0; }
    double cn_coupling() const { return coupling_enabled ? coupling_cn : 0.0; }
    double cm_coupling() const { return coupling_enabled ? coupling_cm : 0.0; }

    /// No perturbation at all, but the fin force is still present in the plant.
    static UncertaintyConfig nominal() { return {}; }

    /// Plant identical to the controller's model.
    static UncertaintyConfig perfect_model() {
        UncertaintyConfig c;
        c.inject_h1 = false;
        return c;
    }

    bool operator==(const UncertaintyConfig&) const = default;
};

}  // namespace agilepilot
