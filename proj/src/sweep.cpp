#include "agilepilot/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include "agilepilot/errors.hpp"

namespace agilepilot {

using nlohmann::json;

namespace {

[[noreturn]] void sweep_error(const std::string& msg) {
    throw FlightError(ErrorKind::Config, "sweep: " + msg);
}

std::string cell_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "cell_%03zu", index);
    return buf;
}

// Mixed-radix decomposition of a flat index, last axis fastest.
std::vector<std::size_t> cell_coordinates(const SweepSpec& spec, std::size_t index) {
    std::vector<std::size_t> coord(spec.axes.size());
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
        const std::size_t n = spec.axes[a].values.size();
        coord[a] = index % n;
        index /= n;
    }
    return coord;
}

std::string csv_field(const json& v) {
    if (v.is_null()) return "";
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", v.get<double>());
        return buf;
    }
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + '"';
    }
    return s;
}

SweepCell run_cell(const SweepSpec& spec, std::size_t index, const std::filesystem::path& out_dir,
                   const std::vector<std::pair<std::string, std::string>>& overrides) {
    SweepCell cell;
    cell.index = index;
    const std::vector<std::size_t> coord = cell_coordinates(spec, index);
    json doc = spec.base;
    try {
        for (const auto& [key, value] : overrides) apply_override(doc, key, value);
        for (std::size_t a = 0; a < spec.axes.size(); ++a) {
            const json& v = spec.axes[a].values[coord[a]];
            cell.assignment.emplace_back(spec.axes[a].path, v);
            apply_override(doc, spec.axes[a].path, v.dump());
        }
        const ScenarioConfig config = scenario_from_json(doc, spec.base_dir);
        const RunResult result = run_scenario(config);
        write_run_outputs(result, out_dir / cell_name(index));
        cell.metrics = metrics_to_json(result);
        cell.status = result.aborted ? "aborted" : "ok";
        cell.message = result.abort_reason;
    } catch (const FlightError& e) {
        cell.status = "config_error";
        cell.message = e.what();
    } catch (const std::exception& e) {
        cell.status = "config_error";
        cell.message = e.what();
    }
    return cell;
}

}  // namespace

bool SweepResult::all_ok() const {
    return std::all_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.status == "ok"; });
}

SweepSpec sweep_from_json(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) sweep_error("document must be an object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "schema_version" && key != "scenario" && key != "axes" && key != "threads") {
            sweep_error("unknown key '" + key + "'");
        }
    }
    if (doc.contains("schema_version") && doc["schema_version"] != 1) {
        sweep_error("unsupported schema_version");
    }

    SweepSpec spec;
    spec.base_dir = base_dir;
    if (!doc.contains("scenario")) sweep_error("missing 'scenario'");
    const json& scen = doc["scenario"];
    if (scen.is_string()) {
        std::filesystem::path p = scen.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        spec.base = read_json_file(p);
        spec.base_dir = p.parent_path();
    } else if (scen.is_object()) {
        spec.base = scen;
    } else {
        sweep_error("'scenario' must be a file path or an object");
    }

    if (!doc.contains("axes") || !doc["axes"].is_array()) sweep_error("'axes' must be an array");
    for (const json& axis : doc["axes"]) {
        if (!axis.is_object() || !axis.contains("path") || !axis["path"].is_string() ||
            !axis.contains("values") || !axis["values"].is_array()) {
            sweep_error("each axis needs a string 'path' and a 'values' array");
        }
        SweepAxis a;
        a.path = axis["path"].get<std::string>();
        for (const json& v : axis["values"]) a.values.push_back(v);
        if (a.values.empty()) sweep_error("axis '" + a.path + "' has no values");
        spec.axes.push_back(std::move(a));
    }

    if (doc.contains("threads")) {
        const json& t = doc["threads"];
        if (!t.is_number_integer() || t.get<long long>() < 0) sweep_error("'threads' must be >= 0");
        spec.threads = t.get<unsigned>();
    }
    return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) {
    return sweep_from_json(read_json_file(path), path.parent_path());
}

std::size_t sweep_size(const SweepSpec& spec) {
    std::size_t n = 1;
    for (const SweepAxis& a : spec.axes) n *= a.values.size();
    return n;
}

SweepResult run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                      const std::vector<std::pair<std::string, std::string>>& overrides) {
    const std::size_t n = sweep_size(spec);
    SweepResult result;
    result.cells.resize(n);

    unsigned workers = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));

    std::filesystem::create_directories(out_dir);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            result.cells[i] = run_cell(spec, i, out_dir, overrides);
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();

    std::ofstream summary(out_dir / "sweep_summary.csv", std::ios::binary);
    write_sweep_summary(summary, spec, result);
    return result;
}

void write_sweep_summary(std::ostream& out, const SweepSpec& spec, const SweepResult& result) {
    // Metric columns come from the first cell that produced metrics.
    std::vector<std::string> metric_keys;
    for (const SweepCell& c : result.cells) {
        if (c.metrics.is_object()) {
            for (const auto& [key, _] : c.metrics.items()) {
                if (key != "status" && key != "abort_reason") metric_keys.push_back(key);
            }
            break;
        }
    }

    out << "cell";
    for (const SweepAxis& a : spec.axes) out << ',' << csv_field(a.path);
    out << ",status,message";
    for (const std::string& k : metric_keys) out << ',' << k;
    out << '\n';

    for (const SweepCell& c : result.cells) {
        out << cell_name(c.index);
        for (const auto& [_, v] : c.assignment) out << ',' << csv_field(v);
        // Config errors can stop before every axis was assigned.
        for (std::size_t i = c.assignment.size(); i < spec.axes.size(); ++i) out << ',';
        out << ',' << c.status << ',' << csv_field(c.message);
        for (const std::string& k : metric_keys) {
            out << ',';
            if (c.metrics.is_object() && c.metrics.contains(k)) out << csv_field(c.metrics[k]);
        }
        out << '\n';
    }
}

}  // namespace agilepilot
