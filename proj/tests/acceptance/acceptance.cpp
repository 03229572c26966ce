// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "agilepilot/actuator.hpp"
#include "agilepilot/aero_model.hpp"
#include "agilepilot/controller.hpp"
#include "agilepilot/feedback_form.hpp"
#include "agilepilot/integrator.hpp"
#include "agilepilot/simulator.hpp"

using namespace agilepilot;

namespace {

constexpr double kDeg = 0.017453292519943295;
const std::filesystem::path kSource = AGILEPILOT_SOURCE_DIR;

struct Verdict {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Verdict()>& check) {
    Verdict v;
    try {
        v = check();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d: %s (%s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

ScenarioConfig scenario(const char* name) { return load_scenario(kSource / "scenarios" / name); }

FlightCondition coast_condition(const Airframe& af, double alpha, double q, double speed) {
    LongitudinalState s;
    s.u = speed * std::cos(alpha);
    s.w = speed * std::sin(alpha);
    s.q = q;
    s.t = 3.0;
    return flight_condition(s, 2000.0, af.boost);
}

// 1. Residual dynamics z1' = -K1 z1 + z2, z2' = -z1 - K2 z2 from z(0) = (0.1, 0):
//    V = (z1^2 + z2^2)/2 never increases, the decay time constant is 1/K, and
//    the trajectory matches 0.1 exp(-25 t) cos t. The same closed form must
//    hold for the residuals of the nonlinear law on the synthetic airframe.
Verdict lyapunov_decay() {
    const BacksteppingGains g;
    const double dt = 1e-3, z0 = 0.1;
    auto residual = [&](double, const StateVector<2>& z) {
        return StateVector<2>{-g.k1 * z[0] + z[1], -z[0] - g.k2 * z[1]};
    };
    StateVector<2> z{z0, 0.0};
    double v_prev = 0.5 * z0 * z0, worst_traj = 0.0;
    bool monotone = true;
    for (int k = 1; k <= 400; ++k) {
        z = rk4_step<2>(z, (k - 1) * dt, dt, residual);
        const double t = k * dt;
        const double v = 0.5 * (z[0] * z[0] + z[1] * z[1]);
        monotone = monotone && v <= v_prev;
        v_prev = v;
        worst_traj = std::max(worst_traj, std::abs(z[0] - z0 * std::exp(-25.0 * t) * std::cos(t)) / z0);
    }
    // |z| = 0.1 exp(-t / T) exactly; recover T from the state at 0.2 s.
    const StateVector<2> z_mid = [&] {
        StateVector<2> y{z0, 0.0};
        for (int k = 0; k < 200; ++k) y = rk4_step<2>(y, k * dt, dt, residual);
        return y;
    }();
    const double time_constant = -0.2 / std::log(std::hypot(z_mid[0], z_mid[1]) / z0);
    const double tc_err = std::abs(time_constant - 1.0 / 25.0) * 25.0;

    // Nonlinear plant under the exact-model law, 30 deg step.
    const Airframe af = synthetic_airframe();
    const double target = 30.0 * kDeg, speed = 250.0;
    auto f1_of = [&](double a) { return eval_f1(coast_condition(af, a, 0.0, speed), af.aero); };
    auto loop = [&](double, const StateVector<2>& x) {
        const FlightCondition fc = coast_condition(af, x[0], x[1], speed);
        const double f1 = eval_f1(fc, af.aero);
        const double z1 = x[0] - target;
        const double x2d = virtual_command(f1, z1, 0.0, 0.0, g);
        const double alpha_dot = f1 + x[1];
        const double h = 1e-6;
        const double df1 = (f1_of(x[0] + h) - f1_of(x[0] - h)) / (2.0 * h);
        const double x2d_dot = -(df1 + g.k1) * alpha_dot;
        const double f2 = eval_f2(fc, af.aero), h2 = eval_h2(fc, af.aero);
        const double u = control_law(f2, h2, z1, x[1] - x2d, x2d_dot, 0.0, g);
        return StateVector<2>{alpha_dot, f2 + h2 * u};
    };
    StateVector<2> x{0.0, 0.0};
    const double z10 = -target;
    const double z20 = -virtual_command(f1_of(0.0), z10, 0.0, 0.0, g);
    const double fine = 1e-4;
    double worst_plant = 0.0;
    for (int k = 1; k <= 4000; ++k) {
        x = rk4_step<2>(x, (k - 1) * fine, fine, loop);
        const double t = k * fine;
        const double exact = std::exp(-25.0 * t) * (z10 * std::cos(t) + z20 * std::sin(t));
        worst_plant = std::max(worst_plant, std::abs(x[0] - target - exact) / std::abs(z10));
    }

    const bool ok = monotone && tc_err < 0.05 && worst_traj < 1e-6 && worst_plant < 1e-6;
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "V non-increasing: %s; time constant %.6f s; max |z1 - closed form| %.1e; "
                  "nonlinear plant residual vs closed form %.1e",
                  monotone ? "yes" : "no", time_constant, worst_traj * z0, worst_plant);
    return {ok, buf};
}

// 2. The strict-feedback form plus the truth uncertainties reproduces the
//    rigid-body alpha_dot and q_dot across the envelope.
Verdict reconstruction() {
    const Airframe af = synthetic_airframe();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> alpha(-89.0 * kDeg, 89.0 * kDeg), speed(100.0, 1200.0),
        rate(-5.0, 5.0), fin(-30.0 * kDeg, 30.0 * kDeg), time(0.0, 5.0), pert(0.0, 0.3);
    std::bernoulli_distribution coin(0.5);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        LongitudinalState s;
        const double a = alpha(rng), v = speed(rng);
        s.u = v * std::cos(a);
        s.w = v * std::sin(a);
        s.q = rate(rng);
        s.t = time(rng);
        const double delta = fin(rng);
        UncertaintyConfig cfg;
        cfg.delta_pert = pert(rng);
        cfg.coupling_cn = default_coupling_cn(af.aero);
        cfg.coupling_cm = default_coupling_cm(af.aero);
        cfg.coupling_enabled = coin(rng);
        cfg.inject_h1 = coin(rng);
        const PlantEvaluation e = evaluate_plant(s, delta, 2000.0, af, cfg);
        const StateDerivative d = rigid_body_derivative(s, e.forces, e.condition.mass);
        const double alpha_dot = (s.u * d.w_dot - s.w * d.u_dot) / (v * v);
        const StrictFeedbackTerms t = eval_terms(e.condition, delta, af.aero);
        const Uncertainties u = truth_uncertainties(e.condition, delta, af.aero, cfg);
        worst = std::max(worst, std::abs(t.f1 + s.q + u.delta1 - alpha_dot) / std::max(1.0, std::abs(alpha_dot)));
        worst = std::max(worst, std::abs(t.f2 + t.h2 * delta + u.delta2 - d.q_dot) / std::max(1.0, std::abs(d.q_dot)));
    }
    return {worst < 1e-10, fmt("10000 conditions, max scaled residual %.2e", worst)};
}

// 3. A disturbance switched on at t = 0 is recovered along the sampled
//    first-order-lag step response; a ramp disturbance a t is tracked with
//    steady error a tau.
Verdict estimator() {
    const double tau = 0.02, dt = 1e-3, c1 = 0.8, c2 = -25.0, slope = 3.0;
    // Lag of a sampled step whose first interval is interpolated linearly.
    auto step_response = [&](double t) {
        return 1.0 - (tau / dt) * (std::exp(dt / tau) - 1.0) * std::exp(-t / tau);
    };
    // alpha = c1 t + 0.5 slope t^2, q = cos 5t, f1 = -q, so delta1 = c1 + slope t.
    // q' = -5 sin 5t, f2 = 3, h2u closes q' with delta2 = c2 for t > 0.
    auto sample = [&](double t, double d1_const, double d1_slope) {
        const double q = std::cos(5.0 * t);
        const double d2 = t > 0.0 ? c2 : 0.0;
        return EstimatorSample{d1_const * t + 0.5 * d1_slope * t * t, q, -q, 3.0,
                               -5.0 * std::sin(5.0 * t) - 3.0 - d2};
    };

    TimeDelayEstimator constant(tau), ramp(tau);
    constant.reset(sample(0.0, c1, 0.0));
    ramp.reset(sample(0.0, 0.0, slope));
    double dev1 = 0.0, dev2 = 0.0, ramp_dev = 0.0, settled1 = 0.0, settled2 = 0.0;
    for (int k = 1; k <= 400; ++k) {
        const double t = k * dt;
        const Estimates e = constant.update(sample(t, c1, 0.0), dt);
        const Estimates r = ramp.update(sample(t, 0.0, slope), dt);
        dev1 = std::max(dev1, std::abs(e.delta1 - c1 * (1.0 - std::exp(-t / tau))) / std::abs(c1));
        dev2 = std::max(dev2, std::abs(e.delta2 - c2 * step_response(t)) / std::abs(c2));
        if (k == 100) {
            settled1 = std::abs(e.delta1 - c1) / std::abs(c1);
            settled2 = std::abs(e.delta2 - c2) / std::abs(c2);
        }
        if (t >= 10.0 * tau) {
            ramp_dev = std::max(ramp_dev, std::abs((slope * t - r.delta1) - slope * tau) / (slope * tau));
        }
    }
    // After 5 tau a unit lag leaves exp(-5) of the step.
    const double residue = std::exp(-5.0) * 1.05;
    const bool ok = dev1 < 0.02 && dev2 < 0.02 && settled1 <= residue && settled2 <= residue &&
                    ramp_dev < 0.02;
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "step deviation from lag response %.2e / %.2e; residue at 5 tau %.4f / %.4f "
                  "(lag %.4f); ramp steady error off a*tau by %.3f%%",
                  dev1, dev2, settled1, settled2, std::exp(-5.0), 100.0 * ramp_dev);
    return {ok, buf};
}

// 4. Under 30% model error plus roll coupling, adaptation removes the
//    steady-state error the fixed law leaves.
Verdict adaptation_benefit() {
    ScenarioConfig c = scenario("step20_uncertain.json");
    c.autopilot.adaptation = true;
    const RunResult on = run_scenario(c);
    c.autopilot.adaptation = false;
    const RunResult off = run_scenario(c);
    if (on.aborted || off.aborted) return {false, "run aborted"};
    const double e_on = *on.metrics.steady_state_error / kDeg;
    const double e_off = *off.metrics.steady_state_error / kDeg;
    return {e_on < 0.5 && e_on < e_off / 3.0,
            fmt("steady-state error %.4f deg with adaptation, %.4f deg without", e_on, e_off)};
}

// 5. Fin limits always hold and the small-signal servo settles as a
//    second-order system with omega 180, zeta 0.7.
Verdict actuator() {
    const ActuatorParams p;
    Actuator act(p);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> cmd(-80.0 * kDeg, 80.0 * kDeg);
    bool limits = true;
    double previous = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const ActuatorState& s = act.step(k % 25 == 0 ? cmd(rng) : act.state().position + cmd(rng) * 0.01, 1e-3);
        limits = limits && std::abs(s.position) <= p.position_limit && std::abs(s.rate) <= p.rate_limit &&
                 std::abs(s.position - previous) <= p.rate_limit * 1e-3 * (1 + 1e-12);
        previous = s.position;
    }
    Actuator small(p);
    const double target = 5.0 * kDeg, dt = 1e-5;
    double last_outside = 0.0;
    for (int k = 1; k <= 20000; ++k) {
        if (std::abs(small.step(target, dt).position - target) > 0.02 * target) last_outside = k * dt;
    }
    const double ts = last_outside + dt, expected = 0.033215;
    return {limits && std::abs(ts - expected) <= 0.1 * expected,
            fmt("limits held over 1e5 random steps; 5 deg step 2%% settling %.5f s vs %.5f s", ts, expected)};
}

// Aerodynamics linear in alpha and constant in Mach, so the open-loop vector
// field is smooth and the integrator's asymptotic order is observable.
AeroModel smooth_aero() {
    const std::vector<double> mach{0.1, 5.0};
    const std::vector<double> alpha{-90.0 * kDeg, 90.0 * kDeg};
    auto linear = [&](double slope) {
        return AlphaMachTable(alpha, mach, {slope * alpha[0], slope * alpha[0], slope * alpha[1], slope * alpha[1]});
    };
    auto flat = [&](double v) { return AlphaMachTable(alpha, mach, {v, v, v, v}); };
    AeroModel m;
    m.ca0 = MachTable::constant(mach, 0.3);
    m.ca_alpha = MachTable::constant(mach, 0.0);
    m.ca_delta = MachTable::constant(mach, 0.5);
    m.ca_thrust = MachTable::constant(mach, 0.0);
    m.cn0 = linear(20.0);
    m.cn_delta = flat(6.0);
    m.cm0 = linear(-30.0);
    m.cm_q = MachTable::constant(mach, -200.0);
    m.cm_delta = flat(-80.0);
    m.reference_area = 0.0127;
    m.reference_length = 0.127;
    return m;
}

// 6. Open-loop trajectory with RK4: halving the step cuts the error ~16x.
Verdict integrator_order() {
    Airframe af = synthetic_airframe();
    af.aero = smooth_aero();
    validate(af.aero);
    const UncertaintyConfig unc = UncertaintyConfig::nominal();
    const double t0 = af.boost.t_burnout + 0.5, fin = -2.0 * kDeg;
    auto run = [&](double dt) {
        PlantVector x{250.0 * std::cos(0.1), 250.0 * std::sin(0.1), 0.0, 0.1, 0.0, 0.0};
        const int n = static_cast<int>(std::lround(0.4 / dt));
        for (int k = 0; k < n; ++k) {
            x = rk4_step<kPlantStates>(x, t0 + k * dt, dt, [&](double t, const PlantVector& v) {
                const StateDerivative d = state_derivative(from_vector(v, t), fin, 2000.0, af, unc);
                return PlantVector{d.u_dot, d.w_dot, d.q_dot, d.theta_dot, d.x_dot, d.y_dot};
            });
        }
        return x;
    };
    const PlantVector a = run(4e-3), b = run(2e-3), c = run(1e-3);
    const double e1 = std::abs(a[kW] - b[kW]) + std::abs(a[kQ] - b[kQ]);
    const double e2 = std::abs(b[kW] - c[kW]) + std::abs(b[kQ] - c[kQ]);
    const double ratio = e1 / e2;
    return {ratio >= 12.0, fmt("error ratio %.2f for dt 4, 2, 1 ms", ratio)};
}

// 7. High-alpha 0 -> 60 -> 0 deg profile tracked within 2 deg of the shaped command.
Verdict high_alpha() {
    const RunResult r = run_scenario(scenario("high_alpha_profile.json"));
    if (r.aborted) return {false, "aborted: " + r.abort_reason};
    const double peak = *r.metrics.peak_tracking_error / kDeg;
    double max_cmd = 0.0;
    for (const TelemetryRecord& rec : r.telemetry) max_cmd = std::max(max_cmd, rec.alpha_cmd_raw);
    return {peak < 2.0 && max_cmd > 59.0 * kDeg,
            fmt("peak error %.3f deg, peak command %.1f deg", peak, max_cmd / kDeg)};
}

// 8. Same configuration and seed give byte-identical telemetry files.
Verdict reproducibility() {
    ScenarioConfig c = scenario("step20_uncertain.json");
    c.t_final = 1.0;
    c.noise.alpha_sigma = 0.1 * kDeg;
    c.noise.q_sigma = 0.5 * kDeg;
    c.noise.accel_sigma = 0.5;
    c.seed = 20240601;
    const auto dir = std::filesystem::temp_directory_path() / "agilepilot_acceptance";
    std::filesystem::remove_all(dir);
    write_run_outputs(run_scenario(c), dir, "a");
    write_run_outputs(run_scenario(c), dir, "b");
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    const std::string a = slurp(dir / "a_telemetry.csv"), b = slurp(dir / "b_telemetry.csv");
    std::filesystem::remove_all(dir);
    return {!a.empty() && a == b, fmt("%.0f bytes compared", static_cast<double>(a.size()))};
}

}  // namespace

int main() {
    report(1, "ideal closed loop is exponentially stable", lyapunov_decay);
    report(2, "strict-feedback reconstruction of the plant", reconstruction);
    report(3, "time-delay estimator accuracy", estimator);
    report(4, "adaptation reduces steady-state error under uncertainty", adaptation_benefit);
    report(5, "actuator limits and small-signal settling", actuator);
    report(6, "fourth-order integration convergence", integrator_order);
    report(7, "high angle-of-attack profile tracking", high_alpha);
    report(8, "reproducible telemetry", reproducibility);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
