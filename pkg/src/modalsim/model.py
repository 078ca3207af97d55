"""Domain types and pure decision mathematics for modal choice.

Everything here is a pure function of its inputs: random draws are passed
in explicitly, so any of it can run from any thread.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

FILTER_MIN = 0.5
FILTER_MAX = 1.95
VALUE_MAX = 100.0
WALK_MAX_KM = 7.0
BIKE_MAX_KM = 15.0
WINDOW_CAPACITY = 100


class Mode(IntEnum):
    """The four mobility modes, in canonical tie-breaking order."""

    CAR = 0
    BIKE = 1
    BUS = 2
    WALK = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "Mode":
        try:
            return cls[label.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown mode: {label!r}") from None


class Criterion(IntEnum):
    """The six decision criteria, in canonical order."""

    ECOLOGY = 0
    COMFORT = 1
    PRICE = 2
    PRACTICALITY = 3
    TIME = 4
    SAFETY = 5

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "Criterion":
        try:
            return cls[label.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown criterion: {label!r}") from None


MODES = tuple(Mode)
CRITERIA = tuple(Criterion)

# A CriteriaVector is a float array of shape (6,); a ModeGrid is (4, 6).


def criteria_vector(values) -> np.ndarray:
    """Build a (6,) float vector from a sequence or a {Criterion: value} mapping."""
    if isinstance(values, dict):
        values = [values[c] for c in CRITERIA]
    out = np.asarray(values, dtype=float)
    if out.shape != (len(CRITERIA),):
        raise ValueError(f"expected {len(CRITERIA)} criterion values, got shape {out.shape}")
    return out


def mode_grid(values) -> np.ndarray:
    """Build a (4, 6) float grid from a nested sequence or {Mode: row} mapping."""
    if isinstance(values, dict):
        values = [values[m] for m in MODES]
    out = np.asarray(values, dtype=float)
    if out.shape != (len(MODES), len(CRITERIA)):
        raise ValueError(f"expected a {len(MODES)}x{len(CRITERIA)} grid, got shape {out.shape}")
    return out


def validate_value_grid(grid: np.ndarray) -> None:
    if np.any(grid < 0) or np.any(grid > VALUE_MAX):
        raise ValueError("value grid entries must lie in [0, 100]")


def validate_filter_grid(grid: np.ndarray) -> None:
    if np.any(grid < FILTER_MIN) or np.any(grid > FILTER_MAX):
        raise ValueError(f"filter grid entries must lie in [{FILTER_MIN}, {FILTER_MAX}]")


class TripWindow:
    """Bounded FIFO of past modes, with incremental per-mode counts.

    Backed by a circular int8 buffer so large populations stay compact.
    Appending at capacity evicts the oldest entry.
    """

    def __init__(self, modes=(), capacity: int = WINDOW_CAPACITY):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.buffer = np.full(capacity, -1, dtype=np.int8)
        self.counts = np.zeros(len(MODES), dtype=np.int64)
        self.length = 0
        self.position = 0  # next insertion index
        for m in modes:
            self.append(m)

    def __len__(self) -> int:
        return self.length

    def append(self, mode: Mode) -> None:
        mode = Mode(mode)
        if self.length == self.capacity:
            evicted = self.buffer[self.position]
            self.counts[evicted] -= 1
        self.buffer[self.position] = int(mode)
        self.counts[mode] += 1
        self.position = (self.position + 1) % self.capacity
        self.length = min(self.length + 1, self.capacity)

    def clear(self) -> None:
        self.buffer.fill(-1)
        self.counts.fill(0)
        self.length = 0
        self.position = 0

    def modes(self) -> list[Mode]:
        """Window contents, oldest first."""
        if self.length < self.capacity:
            raw = self.buffer[: self.length]
        else:
            raw = np.roll(self.buffer, -self.position)
        return [Mode(int(m)) for m in raw]

    def frequencies(self) -> np.ndarray:
        """Per-mode fraction of window occupancy; all zeros when empty."""
        if self.length == 0:
            return np.zeros(len(MODES))
        return self.counts / self.length

    def usual_mode(self) -> Mode | None:
        """Most frequent mode, canonical tie-break; None when empty."""
        if self.length == 0:
            return None
        return Mode(int(np.argmax(self.counts)))

    def copy(self) -> "TripWindow":
        out = TripWindow(capacity=self.capacity)
        out.buffer = self.buffer.copy()
        out.counts = self.counts.copy()
        out.length = self.length
        out.position = self.position
        return out


@dataclass
class Agent:
    """One decision-maker (see the attribute table of the agent model)."""

    id: int
    current_mode: Mode
    distance_km: float
    access_bus: bool
    access_car: bool
    priorities: np.ndarray  # (6,) in [0, 100]
    filter: np.ndarray  # (4, 6) in [0.5, 1.95]
    trips: TripWindow = field(default_factory=TripWindow)
    satisfaction: float = 0.0

    @property
    def usual_mode(self) -> Mode | None:
        return self.trips.usual_mode()


@dataclass
class Decision:
    """Outcome of one agent decision, with the flags the metrics count."""

    chosen: Mode
    by_habit: bool
    habit_contrary: bool
    biased: bool
    constrained: bool
    subjective_scores: np.ndarray  # (4,)
    objective_scores: np.ndarray  # (4,)
    forced: bool = False  # no mode was available; current mode retained

    @property
    def satisfaction(self) -> float:
        # Subjective equals objective when biases are off (perceive is then
        # the identity), so this is the score under the perception in effect.
        return float(self.subjective_scores[self.chosen])


def available_modes(
    distance_km: float,
    access_bus: bool,
    access_car: bool,
    blocked: Mode | None = None,
    walk_max_km: float = WALK_MAX_KM,
    bike_max_km: float = BIKE_MAX_KM,
) -> set[Mode]:
    """Modes this agent can take: walking below 7 km, cycling below 15 km,
    bus and car gated by access. May be empty; callers handle that."""
    out = set()
    if access_car:
        out.add(Mode.CAR)
    if distance_km < bike_max_km:
        out.add(Mode.BIKE)
    if access_bus:
        out.add(Mode.BUS)
    if distance_km < walk_max_km:
        out.add(Mode.WALK)
    if blocked is not None:
        out.discard(Mode(blocked))
    return out


def perceive(objective: np.ndarray, filter_grid: np.ndarray, biases_enabled: bool = True) -> np.ndarray:
    """Apply a perception filter to the objective layout.

    Entrywise multiplication clamped to [0, 100]; the identity when biases
    are disabled.
    """
    if not biases_enabled:
        return objective.copy()
    return np.clip(objective * filter_grid, 0.0, VALUE_MAX)


def score(values: np.ndarray, priorities: np.ndarray, mode: Mode) -> float:
    """Priority-weighted mean of a mode's values, normalized to [0, 100]."""
    total = priorities.sum()
    if total <= 0:
        raise ValueError("degenerate priorities: all weights are zero")
    return float(values[mode] @ priorities / total)


def score_all(values: np.ndarray, priorities: np.ndarray) -> np.ndarray:
    """Scores of all four modes at once."""
    total = priorities.sum()
    if total <= 0:
        raise ValueError("degenerate priorities: all weights are zero")
    return values @ priorities / total


def best_mode(values: np.ndarray, priorities: np.ndarray, candidates: set[Mode]) -> Mode:
    """Argmax of score over candidates, ties broken by canonical mode order."""
    if not candidates:
        raise ValueError("no available mode")
    scores = score_all(values, priorities)
    best = None
    for m in MODES:  # canonical order makes the first strict maximum win
        if m in candidates and (best is None or scores[m] > scores[best]):
            best = m
    return best


def habit_frequencies(trips: TripWindow) -> np.ndarray:
    return trips.frequencies()


def habit_triggers(frequencies: np.ndarray, u: float) -> bool:
    """Whether the habit short-circuits rational evaluation.

    The trigger probability is the frequency of the usual mode (the maximum,
    canonical tie-break): frequency 1 always triggers, 0 never does.
    """
    f = float(np.max(frequencies))
    return u < f


def blend_filter(frequencies: np.ndarray, prototypes: np.ndarray) -> np.ndarray:
    """Entrywise convex combination of the per-mode filter prototypes,
    weighted by habit frequencies.

    prototypes has shape (4, 4, 6): one filter grid per habitual mode.
    """
    total = frequencies.sum()
    if total <= 0:
        raise ValueError("no habit mass: frequencies are all zero")
    return np.einsum("k,kmc->mc", frequencies / total, prototypes)


def decide(
    agent: Agent,
    layout: np.ndarray,
    biases_enabled: bool = True,
    habits_enabled: bool = True,
    blocked: Mode | None = None,
    u_habit: float = 1.0,
    walk_max_km: float = WALK_MAX_KM,
    bike_max_km: float = BIKE_MAX_KM,
) -> Decision:
    """Run the full decision process for one agent against the current layout.

    The habit branch fires when habits are enabled, the habit draw succeeds
    and the usual mode is actually available; otherwise the agent rationally
    picks the best subjectively-perceived candidate. The biased flag applies
    only to rational decisions; habit decisions instead carry habit_contrary,
    measured against the subjective rational best the agent skipped.
    """
    candidates = available_modes(
        agent.distance_km,
        agent.access_bus,
        agent.access_car,
        blocked=blocked,
        walk_max_km=walk_max_km,
        bike_max_km=bike_max_km,
    )
    subjective = perceive(layout, agent.filter, biases_enabled)
    subj_scores = score_all(subjective, agent.priorities)
    obj_scores = score_all(layout, agent.priorities)

    if not candidates:
        # Forced retention: with no mode available at all, the agent keeps
        # its current mode and the decision counts as constrained.
        return Decision(
            chosen=agent.current_mode,
            by_habit=False,
            habit_contrary=False,
            biased=False,
            constrained=True,
            subjective_scores=subj_scores,
            objective_scores=obj_scores,
            forced=True,
        )

    by_habit = False
    habit_contrary = False
    biased = False
    rational_best = best_mode(subjective, agent.priorities, candidates)
    usual = agent.trips.usual_mode()
    if (
        habits_enabled
        and usual is not None
        and usual in candidates
        and habit_triggers(agent.trips.frequencies(), u_habit)
    ):
        chosen = usual
        by_habit = True
        habit_contrary = chosen != rational_best
    else:
        chosen = rational_best
        biased = chosen != best_mode(layout, agent.priorities, candidates)

    preferred = best_mode(subjective, agent.priorities, set(MODES))
    return Decision(
        chosen=chosen,
        by_habit=by_habit,
        habit_contrary=habit_contrary,
        biased=biased,
        constrained=preferred not in candidates,
        subjective_scores=subj_scores,
        objective_scores=obj_scores,
    )


def record_trip(agent: Agent, chosen: Mode, prototypes: np.ndarray, biases_enabled: bool = True) -> Agent:
    """Append the chosen mode to the agent's window and update its state.

    With biases enabled the perception filter drifts toward the blend of
    prototypes weighted by the new habit frequencies.
    """
    agent.trips.append(chosen)
    if biases_enabled and len(agent.trips) > 0:
        agent.filter = blend_filter(agent.trips.frequencies(), prototypes)
    agent.current_mode = Mode(chosen)
    return agent
