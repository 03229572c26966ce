#include "agilepilot/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "agilepilot/simulator.hpp"
#include "agilepilot/sweep.hpp"

namespace agilepilot {

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct CommonOptions {
    std::string out_dir;
    std::optional<double> dt;
    std::optional<std::uint64_t> seed;
    std::string adaptation;  // "", "on" or "off"
    std::vector<std::string> overrides;

    Overrides collect() const {
        Overrides result;
        for (const std::string& o : overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw FlightError(ErrorKind::Config, "--override expects key=value, got '" + o + "'");
            }
            result.emplace_back(o.substr(0, eq), o.substr(eq + 1));
        }
        // Dedicated flags win over generic overrides of the same key.
        if (dt) result.emplace_back("sim.dt_s", json_number(*dt));
        if (seed) result.emplace_back("sim.seed", std::to_string(*seed));
        if (!adaptation.empty()) {
            result.emplace_back("controller.adaptation", adaptation == "on" ? "true" : "false");
        }
        return result;
    }

    static std::string json_number(double v) { return nlohmann::json(v).dump(); }
};

void add_common(CLI::App& cmd, CommonOptions& o, bool with_adaptation = true) {
    cmd.add_option("--out", o.out_dir, "Output directory (default: the scenario's output.dir)");
    cmd.add_option("--dt", o.dt, "Fixed step [s]");
    cmd.add_option("--seed", o.seed, "Noise seed");
    if (with_adaptation) {
        cmd.add_option("--adaptation", o.adaptation, "Uncertainty estimation on or off")
            ->check(CLI::IsMember({"on", "off"}));
    }
    cmd.add_option("--override", o.overrides, "key=value with a dotted scenario path (repeatable)");
}

ScenarioConfig load_with_overrides(const std::string& path, const Overrides& overrides) {
    const std::filesystem::path p(path);
    nlohmann::json doc = read_json_file(p);
    for (const auto& [key, value] : overrides) apply_override(doc, key, value);
    ScenarioConfig config = scenario_from_json(doc, p.parent_path());
    validate(config);
    return config;
}

std::filesystem::path output_dir(const CommonOptions& o, const ScenarioConfig& c) {
    return o.out_dir.empty() ? std::filesystem::path(c.output_dir) : std::filesystem::path(o.out_dir);
}

void print_summary(std::ostream& out, const std::string& label, const RunResult& r) {
    const auto deg = [](const std::optional<double>& v) {
        char buf[32];
        if (!v) return std::string("n/a");
        std::snprintf(buf, sizeof buf, "%.4f deg", *v * 180.0 / 3.14159265358979323846);
        return std::string(buf);
    };
    out << label << ": " << (r.aborted ? "aborted" : "ok") << ", " << r.telemetry.size()
        << " samples, steady-state error " << deg(r.metrics.steady_state_error)
        << ", peak tracking error " << deg(r.metrics.peak_tracking_error) << '\n';
}

int report_abort(std::ostream& err, const std::string& label, const RunResult& r) {
    err << label << ": simulation aborted: " << r.abort_reason << '\n';
    return kExitAborted;
}

int cmd_run(const std::string& path, const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const ScenarioConfig config = load_with_overrides(path, o.collect());
    const RunResult result = run_scenario(config);
    const auto dir = output_dir(o, config);
    write_run_outputs(result, dir);
    print_summary(out, config.name, result);
    out << "wrote " << (dir / "telemetry.csv").string() << " and metrics.json\n";
    return result.aborted ? report_abort(err, config.name, result) : kExitOk;
}

int cmd_compare(const std::string& path, const CommonOptions& o, std::ostream& out,
                std::ostream& err) {
    const Overrides base = o.collect();
    Overrides off = base, on = base;
    off.emplace_back("controller.adaptation", "false");
    on.emplace_back("controller.adaptation", "true");
    const ScenarioConfig config_off = load_with_overrides(path, off);
    const ScenarioConfig config_on = load_with_overrides(path, on);

    const RunResult r_off = run_scenario(config_off);
    const RunResult r_on = run_scenario(config_on);
    const auto dir = output_dir(o, config_on);
    write_run_outputs(r_off, dir, "adaptation_off");
    write_run_outputs(r_on, dir, "adaptation_on");

    const nlohmann::json m_off = metrics_to_json(r_off);
    const nlohmann::json m_on = metrics_to_json(r_on);
    nlohmann::json delta = nlohmann::json::object();
    for (const auto& [key, v_on] : m_on.items()) {
        const nlohmann::json& v_off = m_off[key];
        if (key != "samples" && v_on.is_number() && v_off.is_number()) {
            delta[key] = v_on.get<double>() - v_off.get<double>();
        } else if (v_on.is_number() || v_off.is_number()) {
            delta[key] = nullptr;
        }
    }
    const nlohmann::json summary = {
        {"scenario", config_on.name},
        {"adaptation_off", m_off},
        {"adaptation_on", m_on},
        {"delta_on_minus_off", delta},
    };
    std::ofstream(dir / "comparison.json", std::ios::binary) << summary.dump(2) << '\n';

    print_summary(out, "adaptation off", r_off);
    print_summary(out, "adaptation on", r_on);
    out << "wrote " << (dir / "comparison.json").string() << '\n';

    int code = kExitOk;
    if (r_off.aborted) code = report_abort(err, "adaptation off", r_off);
    if (r_on.aborted) code = report_abort(err, "adaptation on", r_on);
    return code;
}

int cmd_sweep(const std::string& path, const CommonOptions& o, std::ostream& out,
              std::ostream& err) {
    const Overrides overrides = o.collect();
    const SweepSpec spec = load_sweep(path);
    std::filesystem::path dir = o.out_dir;
    if (dir.empty()) {
        // The base scenario decides where outputs go unless --out is given.
        nlohmann::json doc = spec.base;
        for (const auto& [key, value] : overrides) apply_override(doc, key, value);
        dir = scenario_from_json(doc, spec.base_dir).output_dir;
    }
    const SweepResult result = run_sweep(spec, dir, overrides);
    std::size_t failed = 0;
    for (const SweepCell& c : result.cells) {
        if (c.status != "ok") {
            ++failed;
            err << "cell " << c.index << ": " << c.status << ": " << c.message << '\n';
        }
    }
    out << result.cells.size() - failed << "/" << result.cells.size() << " cells ok; wrote "
        << (dir / "sweep_summary.csv").string() << '\n';
    return failed ? kExitPartialSweep : kExitOk;
}

int cmd_validate(const std::vector<std::string>& paths, const CommonOptions& o, std::ostream& out) {
    const Overrides overrides = o.collect();
    for (const std::string& path : paths) {
        const nlohmann::json doc = read_json_file(path);
        if (doc.contains("axes")) {
            const SweepSpec spec = sweep_from_json(doc, std::filesystem::path(path).parent_path());
            nlohmann::json base = spec.base;
            for (const auto& [key, value] : overrides) apply_override(base, key, value);
            validate(scenario_from_json(base, spec.base_dir));
            out << path << ": valid sweep, " << sweep_size(spec) << " cells\n";
        } else {
            const ScenarioConfig c = load_with_overrides(path, overrides);
            out << path << ": valid scenario '" << c.name << "'\n";
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pitch-plane missile autopilot simulator", "agilepilot"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string path;
    std::vector<std::string> paths;

    CLI::App* run = app.add_subcommand("run", "Simulate one scenario");
    run->add_option("scenario", path, "Scenario file")->required();
    add_common(*run, opts);

    CLI::App* compare = app.add_subcommand("compare", "Run a scenario with adaptation off and on");
    compare->add_option("scenario", path, "Scenario file")->required();
    add_common(*compare, opts, false);

    CLI::App* sweep = app.add_subcommand("sweep", "Run the cross product of parameter axes");
    sweep->add_option("sweep", path, "Sweep file")->required();
    add_common(*sweep, opts);

    CLI::App* check = app.add_subcommand("validate", "Parse and check scenario or sweep files");
    check->add_option("files", paths, "Scenario or sweep files")->required();
    add_common(*check, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(path, opts, out, err);
        if (*compare) return cmd_compare(path, opts, out, err);
        if (*sweep) return cmd_sweep(path, opts, out, err);
        return cmd_validate(paths, opts, out);
    } catch (const FlightError& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Parse ? kExitConfig
                                                                             : kExitAborted;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace agilepilot
