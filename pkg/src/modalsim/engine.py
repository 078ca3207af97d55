"""Discrete-time simulation engine.

The engine owns a struct-of-arrays population so a tick is a handful of
vectorized numpy operations; the per-agent semantics are exactly those of
:func:`modalsim.model.decide` followed by :func:`modalsim.model.record_trip`
(there is a cross-check test for that).

Random draws are consumed in a fixed, documented order so serialized
states replay exactly: each tick draws one event uniform per agent (in
ascending id order), then one habit uniform per agent. Both draws happen
every tick regardless of toggles, which keeps the stream independent of
state and interventions applied mid-run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict

import numpy as np

from .calibration import CalibrationData, sample_population
from .model import (
    CRITERIA,
    MODES,
    VALUE_MAX,
    Agent,
    Criterion,
    Mode,
    TripWindow,
)

N_MODES = len(MODES)
N_CRITERIA = len(CRITERIA)


@dataclass
class SimConfig:
    n_agents: int = 200
    seed: int = 0
    biases_enabled: bool = True
    habits_enabled: bool = True
    event_probability: float = 0.01
    window_capacity: int = 100
    walk_max_km: float = 7.0
    bike_max_km: float = 15.0

    def __post_init__(self):
        if not 0.0 <= self.event_probability <= 1.0:
            raise ValueError("event_probability must be in [0, 1]")
        if self.window_capacity < 1 or self.walk_max_km <= 0 or self.bike_max_km <= 0:
            raise ValueError("thresholds must be positive")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SimConfig":
        return cls(**data)


@dataclass
class MetricsSnapshot:
    """Per-tick observables: modal shares, mean satisfaction per mode
    (None for a mode with no current users), and the decision counters."""

    tick: int
    shares: dict  # mode label -> fraction
    mean_satisfaction: dict  # mode label -> float | None
    by_habit: int
    habit_contrary: int
    biased: int
    constrained: int

    def to_dict(self) -> dict:
        return {
            "tick": self.tick,
            "shares": self.shares,
            "mean_satisfaction": self.mean_satisfaction,
            "by_habit": self.by_habit,
            "habit_contrary": self.habit_contrary,
            "biased": self.biased,
            "constrained": self.constrained,
        }


@dataclass
class Intervention:
    """A live steering action; layout edits are clamped to [0, 100]."""

    action: str  # set_value | adjust_value | shift_priority | toggle | reset_habits
    mode: Mode | None = None
    criterion: Criterion | None = None
    value: float | bool | None = None
    delta: float | None = None
    target: str | None = None  # for toggle: "biases" | "habits"

    ACTIONS = ("set_value", "adjust_value", "shift_priority", "toggle", "reset_habits")

    def __post_init__(self):
        if self.action not in self.ACTIONS:
            raise ValueError(f"unknown intervention action: {self.action!r}")
        if self.action in ("set_value", "adjust_value"):
            if self.mode is None or self.criterion is None:
                raise ValueError(f"{self.action} needs a mode and a criterion")
            if self.action == "set_value" and self.value is None:
                raise ValueError("set_value needs a value")
            if self.action == "adjust_value" and self.delta is None:
                raise ValueError("adjust_value needs a delta")
        elif self.action == "shift_priority":
            if self.criterion is None or self.delta is None:
                raise ValueError("shift_priority needs a criterion and a delta")
        elif self.action == "toggle":
            if self.target not in ("biases", "habits") or not isinstance(self.value, bool):
                raise ValueError("toggle needs target 'biases' or 'habits' and a boolean value")

    def to_dict(self) -> dict:
        out = {"action": self.action}
        if self.mode is not None:
            out["mode"] = Mode(self.mode).label
        if self.criterion is not None:
            out["criterion"] = Criterion(self.criterion).label
        if self.value is not None:
            out["value"] = self.value
        if self.delta is not None:
            out["delta"] = self.delta
        if self.target is not None:
            out["target"] = self.target
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Intervention":
        known = {"action", "mode", "criterion", "value", "delta", "target"}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown intervention fields: {sorted(unknown)}")
        return cls(
            action=data.get("action", ""),
            mode=Mode.from_label(data["mode"]) if "mode" in data else None,
            criterion=Criterion.from_label(data["criterion"]) if "criterion" in data else None,
            value=data.get("value"),
            delta=data.get("delta"),
            target=data.get("target"),
        )


class Population:
    """Struct-of-arrays agent storage."""

    __slots__ = (
        "distance",
        "access_bus",
        "access_car",
        "priorities",
        "filters",
        "windows",
        "win_len",
        "win_pos",
        "win_counts",
        "current_mode",
        "satisfaction",
        "capacity",
    )

    def __init__(self, n: int, capacity: int):
        self.capacity = capacity
        self.distance = np.zeros(n)
        self.access_bus = np.zeros(n, dtype=bool)
        self.access_car = np.zeros(n, dtype=bool)
        self.priorities = np.zeros((n, N_CRITERIA))
        self.filters = np.ones((n, N_MODES, N_CRITERIA))
        self.windows = np.full((n, capacity), -1, dtype=np.int8)
        self.win_len = np.zeros(n, dtype=np.int64)
        self.win_pos = np.zeros(n, dtype=np.int64)
        self.win_counts = np.zeros((n, N_MODES), dtype=np.int64)
        self.current_mode = np.zeros(n, dtype=np.int8)
        self.satisfaction = np.zeros(n)

    def __len__(self) -> int:
        return len(self.distance)

    @classmethod
    def from_agents(cls, agents: list[Agent], capacity: int) -> "Population":
        pop = cls(len(agents), capacity)
        pop.distance = np.array([a.distance_km for a in agents])
        pop.access_bus = np.array([a.access_bus for a in agents], dtype=bool)
        pop.access_car = np.array([a.access_car for a in agents], dtype=bool)
        pop.priorities = np.stack([a.priorities for a in agents])
        pop.filters = np.stack([a.filter for a in agents])
        pop.windows = np.stack([a.trips.buffer for a in agents]).astype(np.int8)
        pop.win_len = np.array([a.trips.length for a in agents], dtype=np.int64)
        pop.win_pos = np.array([a.trips.position for a in agents], dtype=np.int64)
        pop.win_counts = np.stack([a.trips.counts for a in agents]).astype(np.int64)
        pop.current_mode = np.array([int(a.current_mode) for a in agents], dtype=np.int8)
        pop.satisfaction = np.array([a.satisfaction for a in agents])
        return pop

    def agent(self, i: int) -> Agent:
        """Materialize agent i as a standalone value (copies everything)."""
        trips = TripWindow(capacity=self.capacity)
        trips.buffer = self.windows[i].copy()
        trips.counts = self.win_counts[i].copy()
        trips.length = int(self.win_len[i])
        trips.position = int(self.win_pos[i])
        return Agent(
            id=i,
            current_mode=Mode(int(self.current_mode[i])),
            distance_km=float(self.distance[i]),
            access_bus=bool(self.access_bus[i]),
            access_car=bool(self.access_car[i]),
            priorities=self.priorities[i].copy(),
            filter=self.filters[i].copy(),
            trips=trips,
            satisfaction=float(self.satisfaction[i]),
        )

    def usual_modes(self) -> np.ndarray:
        """Per-agent usual mode index; -1 when the window is empty."""
        usual = np.argmax(self.win_counts, axis=1).astype(np.int64)
        usual[self.win_len == 0] = -1
        return usual

    def to_dict(self) -> dict:
        return {
            "capacity": self.capacity,
            "distance": self.distance.tolist(),
            "access_bus": self.access_bus.tolist(),
            "access_car": self.access_car.tolist(),
            "priorities": self.priorities.tolist(),
            "filters": self.filters.tolist(),
            "windows": self.windows.tolist(),
            "win_len": self.win_len.tolist(),
            "win_pos": self.win_pos.tolist(),
            "win_counts": self.win_counts.tolist(),
            "current_mode": self.current_mode.tolist(),
            "satisfaction": self.satisfaction.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Population":
        pop = cls(len(data["distance"]), data["capacity"])
        pop.distance = np.asarray(data["distance"], dtype=float)
        pop.access_bus = np.asarray(data["access_bus"], dtype=bool)
        pop.access_car = np.asarray(data["access_car"], dtype=bool)
        pop.priorities = np.asarray(data["priorities"], dtype=float)
        pop.filters = np.asarray(data["filters"], dtype=float)
        pop.windows = np.asarray(data["windows"], dtype=np.int8)
        pop.win_len = np.asarray(data["win_len"], dtype=np.int64)
        pop.win_pos = np.asarray(data["win_pos"], dtype=np.int64)
        pop.win_counts = np.asarray(data["win_counts"], dtype=np.int64)
        pop.current_mode = np.asarray(data["current_mode"], dtype=np.int8)
        pop.satisfaction = np.asarray(data["satisfaction"], dtype=float)
        return pop


@dataclass
class SimState:
    config: SimConfig
    layout: np.ndarray  # (4, 6)
    prototypes: np.ndarray  # (4, 4, 6)
    population: Population
    rng: np.random.Generator
    tick: int = 0
    cumulative: dict = field(
        default_factory=lambda: {"by_habit": 0, "habit_contrary": 0, "biased": 0, "constrained": 0}
    )

    def to_json(self) -> str:
        state = {
            "config": self.config.to_dict(),
            "tick": self.tick,
            "layout": self.layout.tolist(),
            "prototypes": self.prototypes.tolist(),
            "population": self.population.to_dict(),
            "rng_state": self.rng.bit_generator.state,
            "cumulative": self.cumulative,
        }
        return json.dumps(state, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SimState":
        data = json.loads(text)
        rng = np.random.default_rng(0)
        rng.bit_generator.state = data["rng_state"]
        return cls(
            config=SimConfig.from_dict(data["config"]),
            layout=np.asarray(data["layout"], dtype=float),
            prototypes=np.asarray(data["prototypes"], dtype=float),
            population=Population.from_dict(data["population"]),
            rng=rng,
            tick=data["tick"],
            cumulative=data["cumulative"],
        )


def init(calib: CalibrationData, config: SimConfig) -> SimState:
    """Build the initial state: layout from the calibration, population
    sampled from the national shares, deterministic from config.seed."""
    if config.n_agents < 1:
        raise ValueError("empty population")
    rng = np.random.default_rng(config.seed)
    agents = sample_population(
        config.n_agents,
        calib.national_shares,
        calib,
        rng,
        window_capacity=config.window_capacity,
        walk_max_km=config.walk_max_km,
        bike_max_km=config.bike_max_km,
    )
    return SimState(
        config=config,
        layout=calib.objective_layout.copy(),
        prototypes=calib.prototypes.copy(),
        population=Population.from_agents(agents, config.window_capacity),
        rng=rng,
    )


def step(state: SimState) -> MetricsSnapshot:
    """Advance the simulation by one tick.

    All agents decide against the same layout; the random event (blocking
    the usual mode for this decision only) is drawn first, then the habit
    draw. Agent order is ascending id throughout.
    """
    pop = state.population
    cfg = state.config
    n = len(pop)
    idx = np.arange(n)

    u_event = state.rng.random(n)
    u_habit = state.rng.random(n)

    usual = pop.usual_modes()
    has_window = pop.win_len > 0
    event = (u_event < cfg.event_probability) & has_window

    avail = np.empty((n, N_MODES), dtype=bool)
    avail[:, Mode.CAR] = pop.access_car
    avail[:, Mode.BIKE] = pop.distance < cfg.bike_max_km
    avail[:, Mode.BUS] = pop.access_bus
    avail[:, Mode.WALK] = pop.distance < cfg.walk_max_km
    blocked_rows = idx[event]
    avail[blocked_rows, usual[blocked_rows]] = False

    prio_sum = pop.priorities.sum(axis=1)
    if np.any(prio_sum <= 0):
        raise ValueError("degenerate priorities: some agent has all-zero weights")

    if cfg.biases_enabled:
        subj_vals = np.clip(state.layout[None, :, :] * pop.filters, 0.0, VALUE_MAX)
        subj_scores = np.einsum("nmc,nc->nm", subj_vals, pop.priorities) / prio_sum[:, None]
    else:
        subj_scores = np.einsum("mc,nc->nm", state.layout, pop.priorities) / prio_sum[:, None]
    obj_scores = np.einsum("mc,nc->nm", state.layout, pop.priorities) / prio_sum[:, None]

    neg = np.float64(-np.inf)
    best_subj_avail = np.argmax(np.where(avail, subj_scores, neg), axis=1)
    best_obj_avail = np.argmax(np.where(avail, obj_scores, neg), axis=1)
    best_subj_all = np.argmax(subj_scores, axis=1)

    any_avail = avail.any(axis=1)
    freq_usual = np.zeros(n)
    nz = has_window
    freq_usual[nz] = pop.win_counts[idx[nz], usual[nz]] / pop.win_len[nz]
    usual_avail = np.zeros(n, dtype=bool)
    usual_avail[nz] = avail[idx[nz], usual[nz]]

    habit_fires = cfg.habits_enabled & nz & usual_avail & (u_habit < freq_usual)

    chosen = np.where(habit_fires, usual, best_subj_avail)
    chosen = np.where(any_avail, chosen, pop.current_mode).astype(np.int64)

    by_habit = habit_fires & any_avail
    habit_contrary = by_habit & (chosen != best_subj_avail)
    rational = any_avail & ~by_habit
    biased = rational & (best_subj_avail != best_obj_avail) & cfg.biases_enabled
    constrained = ~any_avail | ~avail[idx, best_subj_all]

    pop.satisfaction = subj_scores[idx, chosen]

    # record trips (vectorized record_trip)
    at_cap = pop.win_len == pop.capacity
    evict_rows = idx[at_cap]
    evicted = pop.windows[evict_rows, pop.win_pos[evict_rows]]
    pop.win_counts[evict_rows, evicted.astype(np.int64)] -= 1
    pop.windows[idx, pop.win_pos] = chosen.astype(np.int8)
    pop.win_counts[idx, chosen] += 1
    pop.win_pos = (pop.win_pos + 1) % pop.capacity
    pop.win_len = np.minimum(pop.win_len + 1, pop.capacity)
    pop.current_mode = chosen.astype(np.int8)
    if cfg.biases_enabled:
        freqs = pop.win_counts / pop.win_len[:, None]
        pop.filters = np.einsum("nk,kmc->nmc", freqs, state.prototypes)

    counts = np.bincount(chosen, minlength=N_MODES)
    shares = {m.label: float(counts[m] / n) for m in MODES}
    mean_sat = {}
    for m in MODES:
        users = chosen == int(m)
        mean_sat[m.label] = float(pop.satisfaction[users].mean()) if counts[m] else None

    snapshot = MetricsSnapshot(
        tick=state.tick,
        shares=shares,
        mean_satisfaction=mean_sat,
        by_habit=int(by_habit.sum()),
        habit_contrary=int(habit_contrary.sum()),
        biased=int(biased.sum()),
        constrained=int(constrained.sum()),
    )
    for key in state.cumulative:
        state.cumulative[key] += getattr(snapshot, key)
    state.tick += 1
    return snapshot


def apply(state: SimState, intervention: Intervention) -> SimState:
    """Apply a steering intervention; takes effect from the next step."""
    act = intervention.action
    if act == "set_value":
        state.layout[intervention.mode, intervention.criterion] = np.clip(
            float(intervention.value), 0.0, VALUE_MAX
        )
    elif act == "adjust_value":
        cell = state.layout[intervention.mode, intervention.criterion]
        state.layout[intervention.mode, intervention.criterion] = np.clip(
            cell + float(intervention.delta), 0.0, VALUE_MAX
        )
    elif act == "shift_priority":
        c = intervention.criterion
        state.population.priorities[:, c] = np.clip(
            state.population.priorities[:, c] + float(intervention.delta), 0.0, VALUE_MAX
        )
    elif act == "toggle":
        if intervention.target == "biases":
            state.config.biases_enabled = bool(intervention.value)
        else:
            state.config.habits_enabled = bool(intervention.value)
    elif act == "reset_habits":
        reset_habits(state)
    else:  # unreachable given Intervention validation
        raise ValueError(f"unknown intervention action: {act!r}")
    return state


def reset_habits(state: SimState) -> SimState:
    """Empty every trip window; filters are retained until new trips
    accumulate, so the next decisions all take the rational branch."""
    pop = state.population
    pop.windows.fill(-1)
    pop.win_counts.fill(0)
    pop.win_len.fill(0)
    pop.win_pos.fill(0)
    return state
