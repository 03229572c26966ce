#include "agilepilot/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "agilepilot/errors.hpp"

namespace agilepilot {

using nlohmann::json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

[[noreturn]] void config_error(const std::string& what) {
    throw FlightError(ErrorKind::Config, what);
}

// Radians to degrees, rounded to 12 significant digits so that values typed
// by hand (e.g. 20, 0.5, 450) survive a parse/serialize/parse cycle exactly.
double to_deg(double rad) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", rad / kDeg);
    return std::strtod(buf, nullptr);
}

const json& require_object(const json& j, const std::string& where) {
    if (!j.is_object()) config_error(where + ": expected an object");
    return j;
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!known.count(key)) config_error(where + ": unknown key '" + key + "'");
    }
}

double number(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) config_error(where + "." + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) config_error(where + "." + key + ": not finite");
    return x;
}

bool boolean(const json& obj, const char* key, bool fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) config_error(where + "." + key + ": expected true/false");
    return v.get<bool>();
}

std::string string(const json& obj, const char* key, const std::string& fallback,
                   const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) config_error(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::string resolve_path(const std::string& p, const std::filesystem::path& base) {
    if (p.empty()) return p;
    std::filesystem::path path(p);
    if (path.is_relative()) path = base / path;
    return std::filesystem::absolute(path).lexically_normal().string();
}

// Boost schedule ---------------------------------------------------------

BoostSchedule boost_from_json(const json& j, BoostSchedule b, const std::string& where) {
    require_object(j, where);
    reject_unknown(j,
                   {"mass_launch_kg", "mass_burnout_kg", "iyy_launch_kg_m2", "iyy_burnout_kg_m2",
                    "xcg_launch_m", "xcg_burnout_m", "xcg_ref_m", "thrust_n", "t_burnout_s"},
                   where);
    b.mass_launch = number(j, "mass_launch_kg", b.mass_launch, where);
    b.mass_burnout = number(j, "mass_burnout_kg", b.mass_burnout, where);
    b.iyy_launch = number(j, "iyy_launch_kg_m2", b.iyy_launch, where);
    b.iyy_burnout = number(j, "iyy_burnout_kg_m2", b.iyy_burnout, where);
    b.xcg_launch = number(j, "xcg_launch_m", b.xcg_launch, where);
    b.xcg_burnout = number(j, "xcg_burnout_m", b.xcg_burnout, where);
    b.xcg_ref = number(j, "xcg_ref_m", b.xcg_ref, where);
    b.thrust = number(j, "thrust_n", b.thrust, where);
    b.t_burnout = number(j, "t_burnout_s", b.t_burnout, where);
    return b;
}

json boost_to_json(const BoostSchedule& b) {
    return {{"mass_launch_kg", b.mass_launch},   {"mass_burnout_kg", b.mass_burnout},
            {"iyy_launch_kg_m2", b.iyy_launch},  {"iyy_burnout_kg_m2", b.iyy_burnout},
            {"xcg_launch_m", b.xcg_launch},      {"xcg_burnout_m", b.xcg_burnout},
            {"xcg_ref_m", b.xcg_ref},            {"thrust_n", b.thrust},
            {"t_burnout_s", b.t_burnout}};
}

void validate_boost(const BoostSchedule& b) {
    if (!(b.mass_launch > 0.0 && b.mass_burnout > 0.0)) config_error("boost: masses must be positive");
    if (!(b.iyy_launch > 0.0 && b.iyy_burnout > 0.0)) config_error("boost: Iyy must be positive");
    if (!(b.t_burnout >= 0.0)) config_error("boost: t_burnout must be >= 0");
    if (!(b.thrust >= 0.0)) config_error("boost: thrust must be >= 0");
}

// Aero tables ------------------------------------------------------------

std::vector<double> number_array(const json& j, const std::string& where) {
    if (!j.is_array()) config_error(where + ": expected an array");
    std::vector<double> out;
    for (const json& v : j) {
        if (!v.is_number()) config_error(where + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

MachTable mach_table(const json& aero, const char* key, const std::vector<double>& mach) {
    const std::string where = std::string("aero.") + key;
    if (!aero.contains(key)) config_error(where + ": missing");
    const json& v = aero.at(key);
    if (v.is_number()) return MachTable::constant(mach, v.get<double>(), key);
    return MachTable(mach, number_array(v, where), key);
}

AlphaMachTable alpha_mach_table(const json& aero, const char* key, const std::vector<double>& alpha,
                                const std::vector<double>& mach) {
    const std::string where = std::string("aero.") + key;
    if (!aero.contains(key)) config_error(where + ": missing");
    const json& rows = aero.at(key);
    std::vector<double> values;
    if (rows.is_number()) {
        values.assign(alpha.size() * mach.size(), rows.get<double>());
    } else {
        if (!rows.is_array() || rows.size() != alpha.size()) {
            config_error(where + ": expected one row per alpha breakpoint");
        }
        for (const json& row : rows) {
            std::vector<double> r = number_array(row, where);
            if (r.size() != mach.size()) config_error(where + ": row length must match Mach grid");
            values.insert(values.end(), r.begin(), r.end());
        }
    }
    return AlphaMachTable(alpha, mach, std::move(values), key);
}

json rows_to_json(const AlphaMachTable& t) {
    json rows = json::array();
    for (std::size_t i = 0; i < t.alpha().size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < t.mach().size(); ++j) row.push_back(t.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Scenario sections ----------------------------------------------------------

CommandType command_type_from(const std::string& s) {
    if (s == "step") return CommandType::Step;
    if (s == "profile") return CommandType::Profile;
    if (s == "pi_acceleration") return CommandType::PiAcceleration;
    if (s == "agile_turn") return CommandType::AgileTurn;
    config_error("command.type: unknown command type '" + s + "'");
}

}  // namespace

const char* to_string(CommandType type) {
    switch (type) {
        case CommandType::Step: return "step";
        case CommandType::Profile: return "profile";
        case CommandType::PiAcceleration: return "pi_acceleration";
        case CommandType::AgileTurn: return "agile_turn";
    }
    return "step";
}

double default_coupling_cn(const AeroModel& aero) { return 0.1 * aero.peak_abs_cn0(); }
double default_coupling_cm(const AeroModel& aero) { return 0.1 * aero.peak_abs_cm0(); }

// Airframe files -------------------------------------------------------------

json airframe_to_json(const Airframe& a) {
    const AeroModel& m = a.aero;
    json alpha_deg = json::array();
    for (double x : m.cn0.alpha()) alpha_deg.push_back(x / kDeg);
    json aero = {
        {"mach", m.cn0.mach()},
        {"alpha_deg", alpha_deg},
        {"ca0", m.ca0.values()},
        {"ca_alpha", m.ca_alpha.values()},
        {"ca_delta", m.ca_delta.values()},
        {"ca_thrust", m.ca_thrust.values()},
        {"cm_q", m.cm_q.values()},
        {"cn0", rows_to_json(m.cn0)},
        {"cn_delta", rows_to_json(m.cn_delta)},
        {"cm0", rows_to_json(m.cm0)},
        {"cm_delta", rows_to_json(m.cm_delta)},
    };
    return {{"schema_version", kScenarioSchemaVersion},
            {"name", a.name},
            {"reference_area_m2", m.reference_area},
            {"reference_length_m", m.reference_length},
            {"boost", boost_to_json(a.boost)},
            {"aero", aero}};
}

Airframe airframe_from_json(const json& doc) {
    require_object(doc, "airframe");
    reject_unknown(doc,
                   {"schema_version", "name", "reference_area_m2", "reference_length_m", "boost",
                    "aero"},
                   "airframe");
    if (doc.value("schema_version", kScenarioSchemaVersion) != kScenarioSchemaVersion) {
        config_error("airframe: unsupported schema_version");
    }
    Airframe a;
    a.name = string(doc, "name", "custom", "airframe");
    if (!doc.contains("aero")) config_error("airframe.aero: missing");
    const json& aero = require_object(doc.at("aero"), "airframe.aero");
    reject_unknown(aero,
                   {"mach", "alpha_deg", "ca0", "ca_alpha", "ca_delta", "ca_thrust", "cm_q", "cn0",
                    "cn_delta", "cm0", "cm_delta"},
                   "airframe.aero");
    if (!aero.contains("mach") || !aero.contains("alpha_deg")) {
        config_error("airframe.aero: mach and alpha_deg grids are required");
    }
    const std::vector<double> mach = number_array(aero.at("mach"), "aero.mach");
    std::vector<double> alpha = number_array(aero.at("alpha_deg"), "aero.alpha_deg");
    for (double& x : alpha) x *= kDeg;

    AeroModel& m = a.aero;
    m.ca0 = mach_table(aero, "ca0", mach);
    m.ca_alpha = mach_table(aero, "ca_alpha", mach);
    m.ca_delta = mach_table(aero, "ca_delta", mach);
    m.ca_thrust = aero.contains("ca_thrust") ? mach_table(aero, "ca_thrust", mach)
                                             : MachTable::constant(mach, 0.0, "ca_thrust");
    m.cm_q = mach_table(aero, "cm_q", mach);
    m.cn0 = alpha_mach_table(aero, "cn0", alpha, mach);
    m.cn_delta = alpha_mach_table(aero, "cn_delta", alpha, mach);
    m.cm0 = alpha_mach_table(aero, "cm0", alpha, mach);
    m.cm_delta = alpha_mach_table(aero, "cm_delta", alpha, mach);
    m.reference_area = number(doc, "reference_area_m2", 0.0, "airframe");
    m.reference_length = number(doc, "reference_length_m", 0.0, "airframe");
    validate(m);

    if (doc.contains("boost")) a.boost = boost_from_json(doc.at("boost"), a.boost, "airframe.boost");
    validate_boost(a.boost);
    return a;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FlightError(ErrorKind::Config, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FlightError(ErrorKind::Config, path.string() + ": " + e.what());
    }
}

Airframe load_airframe(const std::filesystem::path& path) {
    return airframe_from_json(read_json_file(path));
}

// Scenario -------------------------------------------------------------------

ScenarioConfig scenario_from_json(const json& doc, const std::filesystem::path& base_dir) {
    require_object(doc, "scenario");
    reject_unknown(doc,
                   {"schema_version", "name", "airframe", "initial", "command", "uncertainty",
                    "controller", "actuator", "sim", "noise", "output", "metrics"},
                   "scenario");
    ScenarioConfig c;
    if (!doc.contains("schema_version")) config_error("scenario: schema_version is required");
    if (!doc.at("schema_version").is_number_integer() ||
        doc.at("schema_version").get<int>() != kScenarioSchemaVersion) {
        config_error("scenario: unsupported schema_version (expected " +
                     std::to_string(kScenarioSchemaVersion) + ")");
    }
    c.name = string(doc, "name", c.name, "scenario");

    if (doc.contains("airframe")) {
        const json& af = doc.at("airframe");
        if (af.is_string()) {
            const std::string s = af.get<std::string>();
            if (s != "synthetic") {
                c.airframe_path = resolve_path(s, base_dir);
                c.airframe = load_airframe(c.airframe_path);
            }
        } else {
            require_object(af, "airframe");
            reject_unknown(af, {"file", "boost"}, "airframe");
            c.airframe_path = resolve_path(string(af, "file", "", "airframe"), base_dir);
            if (!c.airframe_path.empty()) c.airframe = load_airframe(c.airframe_path);
            if (af.contains("boost")) {
                c.airframe.boost = boost_from_json(af.at("boost"), c.airframe.boost, "airframe.boost");
            }
        }
    }

    if (doc.contains("initial")) {
        const json& j = require_object(doc.at("initial"), "initial");
        reject_unknown(j, {"speed_mps", "altitude_m", "alpha_deg", "q_dps"}, "initial");
        c.initial.speed = number(j, "speed_mps", c.initial.speed, "initial");
        c.initial.altitude = number(j, "altitude_m", c.initial.altitude, "initial");
        c.initial.alpha = number(j, "alpha_deg", to_deg(c.initial.alpha), "initial") * kDeg;
        c.initial.q = number(j, "q_dps", to_deg(c.initial.q), "initial") * kDeg;
    }

    if (doc.contains("command")) {
        const json& j = require_object(doc.at("command"), "command");
        reject_unknown(j, {"type", "alpha_deg", "t_step_s", "profile", "accel_mps2", "accel_profile"},
                       "command");
        CommandSource& s = c.command;
        s.type = command_type_from(string(j, "type", "step", "command"));
        s.step_alpha = number(j, "alpha_deg", to_deg(s.step_alpha), "command") * kDeg;
        s.step_time = number(j, "t_step_s", s.step_time, "command");
        s.profile_path = resolve_path(string(j, "profile", "", "command"), base_dir);
        s.accel_cmd = number(j, "accel_mps2", s.accel_cmd, "command");
        s.accel_profile_path = resolve_path(string(j, "accel_profile", "", "command"), base_dir);
    }

    c.uncertainty.coupling_cn = default_coupling_cn(c.airframe.aero);
    c.uncertainty.coupling_cm = default_coupling_cm(c.airframe.aero);
    c.uncertainty.coupling_enabled = false;
    if (doc.contains("uncertainty")) {
        const json& j = require_object(doc.at("uncertainty"), "uncertainty");
        reject_unknown(j, {"delta_pert", "coupling", "coupling_cn", "coupling_cm", "inject_h1"},
                       "uncertainty");
        UncertaintyConfig& u = c.uncertainty;
        u.delta_pert = number(j, "delta_pert", u.delta_pert, "uncertainty");
        u.coupling_enabled = boolean(j, "coupling", u.coupling_enabled, "uncertainty");
        u.coupling_cn = number(j, "coupling_cn", u.coupling_cn, "uncertainty");
        u.coupling_cm = number(j, "coupling_cm", u.coupling_cm, "uncertainty");
        u.inject_h1 = boolean(j, "inject_h1", u.inject_h1, "uncertainty");
    }

    if (doc.contains("controller")) {
        const json& j = require_object(doc.at("controller"), "controller");
        const std::string w = "controller";
        reject_unknown(j,
                       {"adaptation", "k1", "k2", "tau_d", "omega_f", "zeta_f", "omega_x2d",
                        "zeta_x2d", "warmup_lags", "effectiveness_floor", "kp", "ki",
                        "alpha_cmd_limit_deg", "blend_duration_s", "turn_exit_alpha_deg",
                        "heading_reversal_deg"},
                       w);
        AutopilotConfig& a = c.autopilot;
        a.adaptation = boolean(j, "adaptation", a.adaptation, w);
        a.gains.k1 = number(j, "k1", a.gains.k1, w);
        a.gains.k2 = number(j, "k2", a.gains.k2, w);
        a.gains.tau_d = number(j, "tau_d", a.gains.tau_d, w);
        a.command_shaping.omega = number(j, "omega_f", a.command_shaping.omega, w);
        a.command_shaping.zeta = number(j, "zeta_f", a.command_shaping.zeta, w);
        a.virtual_shaping.omega = number(j, "omega_x2d", a.virtual_shaping.omega, w);
        a.virtual_shaping.zeta = number(j, "zeta_x2d", a.virtual_shaping.zeta, w);
        a.warmup_lags = number(j, "warmup_lags", a.warmup_lags, w);
        a.effectiveness_floor = number(j, "effectiveness_floor", a.effectiveness_floor, w);
        c.outer.kp = number(j, "kp", c.outer.kp, w);
        c.outer.ki = number(j, "ki", c.outer.ki, w);
        c.outer.alpha_limit = number(j, "alpha_cmd_limit_deg", to_deg(c.outer.alpha_limit), w) * kDeg;
        c.blend.duration = number(j, "blend_duration_s", c.blend.duration, w);
        c.blend.exit_alpha = number(j, "turn_exit_alpha_deg", to_deg(c.blend.exit_alpha), w) * kDeg;
        c.blend.heading_reversal =
            number(j, "heading_reversal_deg", to_deg(c.blend.heading_reversal), w) * kDeg;
    }

    if (doc.contains("actuator")) {
        const json& j = require_object(doc.at("actuator"), "actuator");
        reject_unknown(j, {"omega", "zeta", "position_limit_deg", "rate_limit_dps"}, "actuator");
        ActuatorParams& p = c.actuator;
        p.omega = number(j, "omega", p.omega, "actuator");
        p.zeta = number(j, "zeta", p.zeta, "actuator");
        p.position_limit = number(j, "position_limit_deg", to_deg(p.position_limit), "actuator") * kDeg;
        p.rate_limit = number(j, "rate_limit_dps", to_deg(p.rate_limit), "actuator") * kDeg;
    }

    if (doc.contains("sim")) {
        const json& j = require_object(doc.at("sim"), "sim");
        reject_unknown(j, {"dt_s", "t_final_s", "seed"}, "sim");
        c.dt = number(j, "dt_s", c.dt, "sim");
        c.t_final = number(j, "t_final_s", c.t_final, "sim");
        if (j.contains("seed")) {
            if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
                config_error("sim.seed: expected a non-negative integer");
            }
            if (j.at("seed").is_number_integer() && j.at("seed").get<std::int64_t>() < 0) {
                config_error("sim.seed: expected a non-negative integer");
            }
            c.seed = j.at("seed").get<std::uint64_t>();
        }
    }

    if (doc.contains("noise")) {
        const json& j = require_object(doc.at("noise"), "noise");
        reject_unknown(j, {"alpha_deg", "q_dps", "accel_mps2"}, "noise");
        c.noise.alpha_sigma = number(j, "alpha_deg", 0.0, "noise") * kDeg;
        c.noise.q_sigma = number(j, "q_dps", 0.0, "noise") * kDeg;
        c.noise.accel_sigma = number(j, "accel_mps2", 0.0, "noise");
    }

    if (doc.contains("output")) {
        const json& j = require_object(doc.at("output"), "output");
        reject_unknown(j, {"dir"}, "output");
        c.output_dir = resolve_path(string(j, "dir", c.output_dir, "output"), {});
    }

    if (doc.contains("metrics")) {
        const json& j = require_object(doc.at("metrics"), "metrics");
        reject_unknown(j, {"steady_window_s"}, "metrics");
        c.steady_window = number(j, "steady_window_s", c.steady_window, "metrics");
    }
    return c;
}

json scenario_to_json(const ScenarioConfig& c) {
    json airframe = {{"boost", boost_to_json(c.airframe.boost)}};
    if (!c.airframe_path.empty()) airframe["file"] = c.airframe_path;

    json command = {{"type", to_string(c.command.type)},
                    {"alpha_deg", to_deg(c.command.step_alpha)},
                    {"t_step_s", c.command.step_time},
                    {"accel_mps2", c.command.accel_cmd}};
    if (!c.command.profile_path.empty()) command["profile"] = c.command.profile_path;
    if (!c.command.accel_profile_path.empty()) command["accel_profile"] = c.command.accel_profile_path;

    const AutopilotConfig& a = c.autopilot;
    return {
        {"schema_version", c.schema_version},
        {"name", c.name},
        {"airframe", airframe},
        {"initial",
         {{"speed_mps", c.initial.speed},
          {"altitude_m", c.initial.altitude},
          {"alpha_deg", to_deg(c.initial.alpha)},
          {"q_dps", to_deg(c.initial.q)}}},
        {"command", command},
        {"uncertainty",
         {{"delta_pert", c.uncertainty.delta_pert},
          {"coupling", c.uncertainty.coupling_enabled},
          {"coupling_cn", c.uncertainty.coupling_cn},
          {"coupling_cm", c.uncertainty.coupling_cm},
          {"inject_h1", c.uncertainty.inject_h1}}},
        {"controller",
         {{"adaptation", a.adaptation},
          {"k1", a.gains.k1},
          {"k2", a.gains.k2},
          {"tau_d", a.gains.tau_d},
          {"omega_f", a.command_shaping.omega},
          {"zeta_f", a.command_shaping.zeta},
          {"omega_x2d", a.virtual_shaping.omega},
          {"zeta_x2d", a.virtual_shaping.zeta},
          {"warmup_lags", a.warmup_lags},
          {"effectiveness_floor", a.effectiveness_floor},
          {"kp", c.outer.kp},
          {"ki", c.outer.ki},
          {"alpha_cmd_limit_deg", to_deg(c.outer.alpha_limit)},
          {"blend_duration_s", c.blend.duration},
          {"turn_exit_alpha_deg", to_deg(c.blend.exit_alpha)},
          {"heading_reversal_deg", to_deg(c.blend.heading_reversal)}}},
        {"actuator",
         {{"omega", c.actuator.omega},
          {"zeta", c.actuator.zeta},
          {"position_limit_deg", to_deg(c.actuator.position_limit)},
          {"rate_limit_dps", to_deg(c.actuator.rate_limit)}}},
        {"sim", {{"dt_s", c.dt}, {"t_final_s", c.t_final}, {"seed", c.seed}}},
        {"noise",
         {{"alpha_deg", to_deg(c.noise.alpha_sigma)},
          {"q_dps", to_deg(c.noise.q_sigma)},
          {"accel_mps2", c.noise.accel_sigma}}},
        {"output", {{"dir", c.output_dir}}},
        {"metrics", {{"steady_window_s", c.steady_window}}},
    };
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    return scenario_from_json(read_json_file(path), path.parent_path());
}

void apply_override(json& doc, const std::string& dotted_path, const std::string& value) {
    if (dotted_path.empty()) config_error("override: empty key");
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;
    }
    json* node = &doc;
    std::stringstream ss(dotted_path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) config_error("override: malformed key '" + dotted_path + "'");
        parts.push_back(part);
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        json& child = (*node)[parts[i]];
        if (child.is_null()) child = json::object();
        if (!child.is_object()) config_error("override: '" + parts[i] + "' is not an object");
        node = &child;
    }
    (*node)[parts.back()] = parsed;
}

void validate(const ScenarioConfig& c) {
    if (!(c.dt > 0.0)) config_error("sim.dt_s must be > 0");
    if (!(c.t_final > c.dt)) config_error("sim.t_final_s must exceed dt");
    if (!(c.initial.speed > 0.0)) config_error("initial.speed_mps must be > 0");
    if (!(c.initial.altitude >= 0.0 && c.initial.altitude <= us76::tropopause_altitude)) {
        config_error("initial.altitude_m outside the 0-11000 m atmosphere model");
    }
    if (!(std::abs(c.initial.alpha) <= kAlphaEnvelope)) config_error("initial.alpha_deg outside +/-90");

    const AutopilotConfig& a = c.autopilot;
    if (!(a.gains.k1 > 0.0 && a.gains.k2 > 0.0)) config_error("controller: k1 and k2 must be > 0");
    if (!(a.gains.tau_d > 0.0)) config_error("controller.tau_d must be > 0");
    if (!(a.command_shaping.omega > 0.0 && a.command_shaping.zeta > 0.0)) {
        config_error("controller: omega_f and zeta_f must be > 0");
    }
    if (!(a.virtual_shaping.omega > 0.0 && a.virtual_shaping.zeta > 0.0)) {
        config_error("controller: omega_x2d and zeta_x2d must be > 0");
    }
    if (!(a.warmup_lags >= 0.0)) config_error("controller.warmup_lags must be >= 0");
    if (!(a.effectiveness_floor >= 0.0)) config_error("controller.effectiveness_floor must be >= 0");
    if (!(c.outer.alpha_limit > 0.0)) config_error("controller.alpha_cmd_limit_deg must be > 0");
    if (!(c.blend.duration > 0.0)) config_error("controller.blend_duration_s must be > 0");

    const ActuatorParams& p = c.actuator;
    if (!(p.omega > 0.0 && p.zeta > 0.0 && p.position_limit > 0.0 && p.rate_limit > 0.0)) {
        config_error("actuator: omega, zeta and limits must be > 0");
    }
    if (!(c.uncertainty.delta_pert >= 0.0)) config_error("uncertainty.delta_pert must be >= 0");
    if (!(c.noise.alpha_sigma >= 0.0 && c.noise.q_sigma >= 0.0 && c.noise.accel_sigma >= 0.0)) {
        config_error("noise: sigmas must be >= 0");
    }
    if (!(c.steady_window > 0.0)) config_error("metrics.steady_window_s must be > 0");
    validate(c.airframe.aero);
    validate_boost(c.airframe.boost);

    auto require_file = [](const std::string& p, const char* what) {
        if (p.empty()) config_error(std::string("command.") + what + " is required");
        if (!std::filesystem::exists(p)) config_error(std::string("command.") + what + ": " + p + " not found");
    };
    switch (c.command.type) {
        case CommandType::Step:
            if (!(c.command.step_time >= 0.0)) config_error("command.t_step_s must be >= 0");
            break;
        case CommandType::Profile:
            require_file(c.command.profile_path, "profile");
            break;
        case CommandType::AgileTurn:
            require_file(c.command.profile_path, "profile");
            if (!c.command.accel_profile_path.empty()) require_file(c.command.accel_profile_path, "accel_profile");
            break;
        case CommandType::PiAcceleration:
            if (!c.command.accel_profile_path.empty()) require_file(c.command.accel_profile_path, "accel_profile");
            break;
    }
}

bool same_configuration(const ScenarioConfig& a, const ScenarioConfig& b) {
    return scenario_to_json(a) == scenario_to_json(b);
}

}  // namespace agilepilot
