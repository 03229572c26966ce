"""Python access to the agilepilot pitch-plane autopilot simulator."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence, Union

from ._agilepilot import (
    Actuator,
    ActuatorParams,
    FlightError,
    LagFilter,
    atmosphere,
)
from . import _agilepilot as _core

__all__ = [
    "Actuator",
    "ActuatorParams",
    "FlightError",
    "LagFilter",
    "RunResult",
    "atmosphere",
    "load_scenario",
    "run",
    "run_cli",
]

Scenario = Union[str, os.PathLike, Mapping[str, Any]]


@dataclass
class RunResult:
    metrics: dict[str, Any]
    telemetry: dict[str, list[float]]
    aborted: bool
    abort_kind: str | None
    abort_reason: str

    def channel(self, name: str) -> list[float]:
        return self.telemetry[name]


def _document(scenario: Scenario) -> tuple[str, str]:
    if isinstance(scenario, Mapping):
        return json.dumps(scenario), "."
    path = Path(scenario)
    return path.read_text(encoding="utf-8"), str(path.parent)


def _pairs(overrides: Mapping[str, Any] | None) -> list[tuple[str, str]]:
    if not overrides:
        return []
    return [(k, v if isinstance(v, str) else json.dumps(v)) for k, v in overrides.items()]


def load_scenario(scenario: Scenario, overrides: Mapping[str, Any] | None = None) -> dict[str, Any]:
    """Validated scenario with every default filled in."""
    doc, base = _document(scenario)
    return json.loads(_core.resolve_scenario(doc, base, _pairs(overrides)))


def run(scenario: Scenario, overrides: Mapping[str, Any] | None = None) -> RunResult:
    """Runs a scenario given as a JSON file path or an already parsed mapping.

    Overrides use the same dotted keys as ``agilepilot run --override``.
    """
    doc, base = _document(scenario)
    raw = _core.run_scenario(doc, base, _pairs(overrides))
    return RunResult(
        metrics=json.loads(raw["metrics_json"]),
        telemetry=raw["telemetry"],
        aborted=raw["aborted"],
        abort_kind=raw["abort_kind"],
        abort_reason=raw["abort_reason"],
    )


def run_cli(args: Sequence[str]) -> tuple[int, str, str]:
    """Same behaviour as the command-line tool; returns (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
