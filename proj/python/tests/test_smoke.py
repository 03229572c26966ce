import math
import os
from pathlib import Path

import pytest

import agilepilot

ROOT = Path(os.environ.get("AGILEPILOT_SOURCE_DIR", Path(__file__).resolve().parents[2]))
SCENARIOS = ROOT / "scenarios"


def test_atmosphere_matches_reference_point():
    a = agilepilot.atmosphere(2000.0, 250.0)
    assert a["density"] == pytest.approx(1.0064900974626036, rel=1e-12)
    assert a["speed_of_sound"] == pytest.approx(332.52915068110946, rel=1e-12)
    assert a["mach"] == pytest.approx(250.0 / a["speed_of_sound"], rel=1e-15)


def test_atmosphere_out_of_range_raises_flight_error():
    with pytest.raises(agilepilot.FlightError) as info:
        agilepilot.atmosphere(-5000.0, 250.0)
    assert info.value.args[0] == "out_of_envelope"


def test_short_step_run_tracks_command():
    r = agilepilot.run(SCENARIOS / "step20.json", {"sim.t_final_s": 1.0})
    assert not r.aborted
    assert r.abort_kind is None
    t = r.channel("t")
    assert len(t) == 1001
    assert t[-1] == pytest.approx(1.0)
    final_alpha = math.degrees(r.channel("alpha")[-1])
    assert final_alpha == pytest.approx(20.0, abs=0.05)
    assert r.metrics["settling_time_s"] < 0.5
    assert r.metrics["status"] == "ok"


def test_mapping_scenario_and_resolution():
    doc = {
        "schema_version": 1,
        "command": {"type": "step", "alpha_deg": 5},
        "sim": {"dt_s": 0.002, "t_final_s": 0.2},
    }
    resolved = agilepilot.load_scenario(doc)
    assert resolved["sim"]["dt_s"] == 0.002
    assert resolved["controller"]["k1"] == 25
    r = agilepilot.run(doc)
    assert len(r.channel("alpha")) == 101


def test_bad_scenario_raises_config_error():
    with pytest.raises(agilepilot.FlightError) as info:
        agilepilot.run({"schema_version": 1, "sim": {"dt_s": -1.0}})
    assert info.value.args[0] == "config_error"


def test_actuator_respects_limits():
    act = agilepilot.Actuator()
    limit = act.params.rate_limit
    previous = 0.0
    for _ in range(200):
        pos, rate = act.step(math.radians(80.0), 1e-3)
        assert abs(pos) <= act.params.position_limit
        assert abs(rate) <= limit
        assert abs(pos - previous) <= limit * 1e-3 * (1 + 1e-12)
        previous = pos
    assert act.position == pytest.approx(math.radians(30.0))


def test_lag_filter_ramp_lags_by_tau():
    tau, dt = 0.02, 1e-3
    lag = agilepilot.LagFilter(tau)
    lag.reset(0.0, 0.0)
    for k in range(1, 501):
        lag.step(k * dt, dt)
    assert 0.5 - lag.value == pytest.approx(tau, rel=1e-6)


def test_cli_validate(tmp_path):
    code, out, err = agilepilot.run_cli(["validate", str(SCENARIOS / "step20.json")])
    assert code == 0, err
    code, _, err = agilepilot.run_cli(["validate", str(tmp_path / "missing.json")])
    assert code == 2
    assert err
