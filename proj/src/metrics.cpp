#include <algorithm>
#include <cmath>

#include "agilepilot/simulator.hpp"

namespace agilepilot {

MetricsSettings metrics_settings(const ScenarioConfig& c) {
    MetricsSettings s;
    s.step_command = c.command.type == CommandType::Step;
    s.step_time = c.command.step_time;
    s.step_target = c.command.step_alpha;
    s.steady_window = c.steady_window;
    s.estimate_skip = std::max(c.autopilot.warmup_lags, 5.0) * c.autopilot.gains.tau_d;
    s.heading_reversal = c.blend.heading_reversal;
    return s;
}

// Definitions:
//   settling time  first sample after the last one whose |error| exceeds 2% of
//                  the step size, measured from the step time; empty if the
//                  final sample is still outside the band
//   overshoot      peak excursion beyond the target, % of step size, >= 0
//   rise time      10% to 90% of the step
//   steady state   mean |alpha_cmd_raw - alpha| over the trailing window
Metrics compute_metrics(const std::vector<TelemetryRecord>& tel, const MetricsSettings& s) {
    Metrics m;
    if (tel.empty()) return m;
    m.final_time = tel.back().t;

    // Trailing-window and whole-run tracking statistics.
    const double window_start = tel.back().t - s.steady_window;
    double ss_sum = 0.0;
    std::size_t ss_n = 0;
    double peak_track = 0.0, sum_sq_track = 0.0, peak_cmd = 0.0;
    double peak_fin = 0.0, peak_rate = 0.0, peak_rate_cmd = 0.0;
    double sq1 = 0.0, sq2 = 0.0;
    std::size_t n_est = 0;
    const double heading0 = tel.front().heading;
    for (std::size_t i = 0; i < tel.size(); ++i) {
        const TelemetryRecord& r = tel[i];
        if (r.t >= window_start - 1e-12) {
            ss_sum += std::abs(r.alpha_cmd_raw - r.alpha);
            ++ss_n;
        }
        const double track = std::abs(r.alpha - r.alpha_cmd_shaped);
        peak_track = std::max(peak_track, track);
        sum_sq_track += track * track;
        peak_cmd = std::max(peak_cmd, std::abs(r.alpha - r.alpha_cmd_raw));
        peak_fin = std::max(peak_fin, std::abs(r.fin));
        peak_rate = std::max(peak_rate, std::abs(r.fin_rate));
        if (i > 0) {
            const double dt = r.t - tel[i - 1].t;
            if (dt > 0.0) {
                peak_rate_cmd = std::max(peak_rate_cmd, std::abs(r.fin_cmd - tel[i - 1].fin_cmd) / dt);
            }
        }
        if (r.t >= s.estimate_skip) {
            sq1 += (r.delta1_hat - r.delta1_true) * (r.delta1_hat - r.delta1_true);
            sq2 += (r.delta2_hat - r.delta2_true) * (r.delta2_hat - r.delta2_true);
            ++n_est;
        }
        if (!m.heading_reversal_time && s.heading_reversal > 0.0 &&
            std::abs(r.heading - heading0) >= s.heading_reversal) {
            m.heading_reversal_time = r.t;
        }
    }
    if (ss_n) m.steady_state_error = ss_sum / static_cast<double>(ss_n);
    m.peak_tracking_error = peak_track;
    m.rms_tracking_error = std::sqrt(sum_sq_track / static_cast<double>(tel.size()));
    m.peak_command_error = peak_cmd;
    m.peak_fin = peak_fin;
    m.peak_fin_rate = peak_rate;
    if (tel.size() > 1) m.peak_fin_rate_demanded = peak_rate_cmd;
    if (n_est) {
        m.rms_delta1_error = std::sqrt(sq1 / static_cast<double>(n_est));
        m.rms_delta2_error = std::sqrt(sq2 / static_cast<double>(n_est));
    }

    if (!s.step_command) return m;

    // Step response, relative to the state at the step time.
    const auto first = std::find_if(tel.begin(), tel.end(),
                                    [&](const TelemetryRecord& r) { return r.t >= s.step_time - 1e-12; });
    if (first == tel.end()) return m;
    const double initial = first->alpha;
    const double size = s.step_target - initial;
    if (!(std::abs(size) > 1e-12)) return m;  // degenerate: metrics not applicable
    m.step_size = size;

    const double band = 0.02 * std::abs(size);
    std::optional<double> t10, t90;
    double overshoot = 0.0;
    auto last_outside = tel.end();
    for (auto it = first; it != tel.end(); ++it) {
        const double progress = (it->alpha - initial) / size;
        if (!t10 && progress >= 0.1) t10 = it->t;
        if (!t90 && progress >= 0.9) t90 = it->t;
        overshoot = std::max(overshoot, progress - 1.0);
        if (std::abs(it->alpha - s.step_target) > band) last_outside = it;
    }
    if (t10 && t90) m.rise_time = *t90 - *t10;
    m.overshoot_pct = 100.0 * overshoot;
    if (last_outside == tel.end()) {
        m.settling_time = 0.0;
    } else if (std::next(last_outside) != tel.end()) {
        m.settling_time = std::next(last_outside)->t - s.step_time;
    }
    return m;
}

}  // namespace agilepilot
