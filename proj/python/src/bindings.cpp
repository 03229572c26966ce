#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "agilepilot/actuator.hpp"
#include "agilepilot/atmosphere.hpp"
#include "agilepilot/cli.hpp"
#include "agilepilot/controller.hpp"
#include "agilepilot/errors.hpp"
#include "agilepilot/scenario.hpp"
#include "agilepilot/simulator.hpp"

namespace py = pybind11;
using namespace agilepilot;

namespace {

ScenarioConfig build_config(const std::string& document, const std::string& base_dir,
                            const std::vector<std::pair<std::string, std::string>>& overrides) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw FlightError(ErrorKind::Parse, std::string("scenario JSON: ") + e.what());
    }
    for (const auto& [key, value] : overrides) apply_override(doc, key, value);
    return scenario_from_json(doc, base_dir);
}

py::dict run_result(const RunResult& r) {
    py::dict telemetry;
    const std::vector<std::string>& names = telemetry_channels();
    std::vector<py::list> columns(names.size());
    for (const TelemetryRecord& rec : r.telemetry) {
        const std::vector<double> row = telemetry_values(rec);
        for (std::size_t i = 0; i < row.size(); ++i) columns[i].append(row[i]);
    }
    for (std::size_t i = 0; i < names.size(); ++i) telemetry[py::str(names[i])] = columns[i];

    py::dict out;
    out["metrics_json"] = metrics_to_json(r).dump();
    out["aborted"] = r.aborted;
    out["abort_kind"] = r.abort_kind ? py::object(py::str(to_string(*r.abort_kind))) : py::none();
    out["abort_reason"] = r.abort_reason;
    out["telemetry"] = telemetry;
    return out;
}

}  // namespace

PYBIND11_MODULE(_agilepilot, m) {
    m.doc() = "Pitch-plane missile autopilot simulator core";

    static py::exception<FlightError> flight_error(m, "FlightError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const FlightError& e) {
            py::object err = flight_error;
            PyErr_SetObject(err.ptr(), py::make_tuple(to_string(e.kind()), e.what()).ptr());
        }
    });

    m.def(
        "atmosphere",
        [](double altitude, double speed) {
            const AtmosphereSample s = atmosphere(altitude, speed);
            py::dict d;
            d["density"] = s.density;
            d["speed_of_sound"] = s.speed_of_sound;
            d["dynamic_pressure"] = s.dynamic_pressure;
            d["mach"] = s.mach;
            return d;
        },
        py::arg("altitude"), py::arg("speed"));

    m.def(
        "resolve_scenario",
        [](const std::string& document, const std::string& base_dir,
           const std::vector<std::pair<std::string, std::string>>& overrides) {
            return scenario_to_json(build_config(document, base_dir, overrides)).dump();
        },
        py::arg("document"), py::arg("base_dir") = ".", py::arg("overrides") = py::list());

    m.def(
        "run_scenario",
        [](const std::string& document, const std::string& base_dir,
           const std::vector<std::pair<std::string, std::string>>& overrides) {
            const ScenarioConfig config = build_config(document, base_dir, overrides);
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_scenario(config);
            }
            return run_result(r);
        },
        py::arg("document"), py::arg("base_dir") = ".", py::arg("overrides") = py::list());

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<const char*> argv{"agilepilot"};
            for (const std::string& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));

    py::class_<ActuatorParams>(m, "ActuatorParams")
        .def(py::init<>())
        .def_readwrite("omega", &ActuatorParams::omega)
        .def_readwrite("zeta", &ActuatorParams::zeta)
        .def_readwrite("position_limit", &ActuatorParams::position_limit)
        .def_readwrite("rate_limit", &ActuatorParams::rate_limit)
        .def_static("unlimited", &ActuatorParams::unlimited, py::arg("omega") = 180.0,
                    py::arg("zeta") = 0.7);

    py::class_<Actuator>(m, "Actuator")
        .def(py::init<ActuatorParams>(), py::arg("params") = ActuatorParams{})
        .def(
            "step",
            [](Actuator& a, double cmd, double dt) {
                const ActuatorState& s = a.step(cmd, dt);
                return py::make_tuple(s.position, s.rate);
            },
            py::arg("command"), py::arg("dt"))
        .def(
            "reset",
            [](Actuator& a, double position, double rate) { a.reset({position, rate}); },
            py::arg("position") = 0.0, py::arg("rate") = 0.0)
        .def_property_readonly("position", [](const Actuator& a) { return a.state().position; })
        .def_property_readonly("rate", [](const Actuator& a) { return a.state().rate; })
        .def_property_readonly("params", &Actuator::params);

    py::class_<LagFilter>(m, "LagFilter")
        .def(py::init<double>(), py::arg("tau") = 0.02)
        .def("reset", py::overload_cast<double, double>(&LagFilter::reset), py::arg("state"),
             py::arg("input"))
        .def("step", &LagFilter::step, py::arg("input"), py::arg("dt"))
        .def_property_readonly("value", &LagFilter::value)
        .def_property_readonly("derivative", &LagFilter::derivative)
        .def_property_readonly("tau", &LagFilter::tau);
}
