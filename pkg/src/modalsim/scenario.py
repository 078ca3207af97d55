"""Declarative scenario files, batch execution across seeds and export.

A scenario is a JSON document:

    {"config": {"n_agents": 200, "ticks": 400, "seeds": [1, 2],
                "biases": true, "habits": true, "event_probability": 0.01},
     "events": [{"at": 0, "every": 20, "count": 10,
                 "action": "adjust_value", "mode": "bike",
                 "criterion": "safety", "delta": 5}]}

Events with "every"/"count" expand to a repeated timeline. All events due
at tick t are applied before the agents decide at tick t.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from . import engine
from .calibration import CalibrationData
from .engine import Intervention, MetricsSnapshot, SimConfig, SimState

CSV_COLUMNS = [
    "tick",
    "share_car",
    "share_bike",
    "share_bus",
    "share_walk",
    "sat_car",
    "sat_bike",
    "sat_bus",
    "sat_walk",
    "n_by_habit",
    "n_habit_contrary",
    "n_biased",
    "n_constrained",
]

SCENARIO_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "config": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "n_agents": {"type": "integer", "minimum": 1},
                "ticks": {"type": "integer", "minimum": 0},
                "seeds": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
                "biases": {"type": "boolean"},
                "habits": {"type": "boolean"},
                "event_probability": {"type": "number", "minimum": 0, "maximum": 1},
            },
        },
        "events": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["at", "action"],
                "properties": {
                    "at": {"type": "integer", "minimum": 0},
                    "every": {"type": "integer", "minimum": 1},
                    "count": {"type": "integer", "minimum": 1},
                    "action": {
                        "enum": ["set_value", "adjust_value", "shift_priority", "toggle", "reset_habits"]
                    },
                    "mode": {"enum": ["car", "bike", "bus", "walk"]},
                    "criterion": {
                        "enum": ["ecology", "comfort", "price", "practicality", "time", "safety"]
                    },
                    "delta": {"type": "number"},
                    "value": {"type": ["number", "boolean"]},
                    "target": {"enum": ["biases", "habits"]},
                },
            },
        },
    },
}


class ScenarioError(ValueError):
    """Scenario file does not match the schema."""


@dataclass
class TimedEvent:
    at: int
    action: Intervention
    every: int | None = None
    count: int | None = None

    def occurrences(self) -> list[int]:
        if self.every is None:
            return [self.at]
        reps = self.count if self.count is not None else 1
        return [self.at + self.every * k for k in range(reps)]

    def to_dict(self) -> dict:
        out = {"at": self.at}
        if self.every is not None:
            out["every"] = self.every
        if self.count is not None:
            out["count"] = self.count
        out.update(self.action.to_dict())
        return out


@dataclass
class Scenario:
    n_agents: int = 200
    ticks: int = 400
    seeds: list[int] = field(default_factory=lambda: [0])
    biases: bool = True
    habits: bool = True
    event_probability: float = 0.01
    events: list[TimedEvent] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "config": {
                "n_agents": self.n_agents,
                "ticks": self.ticks,
                "seeds": list(self.seeds),
                "biases": self.biases,
                "habits": self.habits,
                "event_probability": self.event_probability,
            },
            "events": [e.to_dict() for e in self.events],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def sim_config(self, seed: int) -> SimConfig:
        return SimConfig(
            n_agents=self.n_agents,
            seed=seed,
            biases_enabled=self.biases,
            habits_enabled=self.habits,
            event_probability=self.event_probability,
        )

    def timeline(self) -> list[tuple[int, Intervention]]:
        """Expanded (tick, intervention) pairs, sorted by tick, stable."""
        expanded = []
        for order, ev in enumerate(self.events):
            for t in ev.occurrences():
                expanded.append((t, order, ev.action))
        expanded.sort(key=lambda item: (item[0], item[1]))
        return [(t, action) for t, _, action in expanded]


def parse_scenario(text: str | dict) -> Scenario:
    """Validate and load a scenario document; unknown fields are rejected
    with the JSON path of the offending field."""
    data = json.loads(text) if isinstance(text, str) else text
    try:
        jsonschema.validate(data, SCENARIO_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ScenarioError(f"invalid scenario at {path}: {exc.message}") from None

    cfg = data.get("config", {})
    events = []
    for i, ev in enumerate(data.get("events", [])):
        fields = {k: v for k, v in ev.items() if k not in ("at", "every", "count")}
        try:
            action = Intervention.from_dict(fields)
        except ValueError as exc:
            raise ScenarioError(f"invalid scenario at events/{i}: {exc}") from None
        events.append(TimedEvent(at=ev["at"], every=ev.get("every"), count=ev.get("count"), action=action))
    return Scenario(
        n_agents=cfg.get("n_agents", 200),
        ticks=cfg.get("ticks", 400),
        seeds=list(cfg.get("seeds", [0])),
        biases=cfg.get("biases", True),
        habits=cfg.get("habits", True),
        event_probability=cfg.get("event_probability", 0.01),
        events=events,
    )


def load_preset(name: str) -> Scenario:
    """Load one of the bundled scenario presets by file name."""
    if not name.endswith(".json"):
        name += ".json"
    text = resources.files("modalsim.presets").joinpath(name).read_text()
    return parse_scenario(text)


def run_single(
    scenario: Scenario, calib: CalibrationData, seed: int
) -> tuple[list[MetricsSnapshot], SimState]:
    """Run one seed: init, then per tick apply due events and step."""
    state = engine.init(calib, scenario.sim_config(seed))
    timeline = scenario.timeline()
    pos = 0
    snapshots = []
    for t in range(scenario.ticks):
        while pos < len(timeline) and timeline[pos][0] <= t:
            engine.apply(state, timeline[pos][1])
            pos += 1
        snapshots.append(engine.step(state))
    return snapshots, state


def run_scenario(scenario: Scenario, calib: CalibrationData) -> dict[int, list[MetricsSnapshot]]:
    """Run every seed; output keyed and ordered by seed position."""
    return {seed: run_single(scenario, calib, seed)[0] for seed in scenario.seeds}


def _fmt(x: float) -> str:
    return format(x, ".12g")


def snapshot_row(snap: MetricsSnapshot) -> list[str]:
    row = [str(snap.tick)]
    row += [_fmt(snap.shares[m]) for m in ("car", "bike", "bus", "walk")]
    for m in ("car", "bike", "bus", "walk"):
        sat = snap.mean_satisfaction[m]
        row.append("" if sat is None else _fmt(sat))
    row += [str(snap.by_habit), str(snap.habit_contrary), str(snap.biased), str(snap.constrained)]
    return row


def export_csv(series: list[MetricsSnapshot]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    lines += [",".join(snapshot_row(s)) for s in series]
    return "\n".join(lines) + "\n"


def export_json(series: list[MetricsSnapshot]) -> str:
    return json.dumps([s.to_dict() for s in series], indent=2)


def export(series: list[MetricsSnapshot], fmt: str, path) -> None:
    """Write one seed's time series as CSV or JSON (byte-deterministic)."""
    if fmt == "csv":
        text = export_csv(series)
    elif fmt == "json":
        text = export_json(series)
    else:
        raise ValueError(f"unknown export format: {fmt!r}")
    with open(path, "w") as f:
        f.write(text)


def aggregate_csv(results: dict[int, list[MetricsSnapshot]]) -> str:
    """Cross-seed mean and stdev per tick for every numeric series column.

    Satisfaction aggregates over the seeds where the mode had users.
    """
    import numpy as np

    header = ["tick"]
    for col in CSV_COLUMNS[1:]:
        header += [f"{col}_mean", f"{col}_std"]
    lines = [",".join(header)]
    if not results:
        return lines[0] + "\n"
    n_ticks = min(len(s) for s in results.values())
    for t in range(n_ticks):
        row = [str(t)]
        snaps = [series[t] for series in results.values()]
        for col in CSV_COLUMNS[1:]:
            values = []
            for s in snaps:
                if col.startswith("share_"):
                    values.append(s.shares[col[len("share_"):]])
                elif col.startswith("sat_"):
                    v = s.mean_satisfaction[col[len("sat_"):]]
                    if v is not None:
                        values.append(v)
                else:
                    values.append(getattr(s, col[len("n_"):]))
            if values:
                arr = np.asarray(values, dtype=float)
                row += [_fmt(float(arr.mean())), _fmt(float(arr.std()))]
            else:
                row += ["", ""]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
