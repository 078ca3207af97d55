"""Survey ingestion, calibration statistics and population synthesis.

The calibration pipeline turns the raw survey export (one row per
respondent, Likert 0-10 ratings) into everything the simulator needs:
per-mode priorities and distance distributions, access probabilities,
perception-filter prototypes and the objective urban layout. When the
open dataset is not at hand, :func:`default_calibration` builds the same
structure from the statistics embedded in :mod:`modalsim.defaults`.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import defaults
from .model import (
    BIKE_MAX_KM,
    CRITERIA,
    FILTER_MAX,
    FILTER_MIN,
    MODES,
    VALUE_MAX,
    WALK_MAX_KM,
    WINDOW_CAPACITY,
    Agent,
    Criterion,
    Mode,
    TripWindow,
)

MODE_LABELS = [m.label for m in MODES]
CRITERION_LABELS = [c.label for c in CRITERIA]


@dataclass
class SurveyResponse:
    """One cleaned survey row, still on the 0-10 survey scale."""

    usual_mode: Mode
    distance_km: float
    priorities: np.ndarray  # (6,) in [0, 10]
    evaluations: np.ndarray  # (4, 6) in [0, 10]
    declared_inaccessible: set[Mode] = field(default_factory=set)


@dataclass
class ParseResult:
    responses: list[SurveyResponse]
    dropped: int


def _canonical_columns() -> list[str]:
    cols = ["usual_mode", "distance_km"]
    cols += [f"prio_{c}" for c in CRITERION_LABELS]
    cols += [f"eval_{m}_{c}" for m in MODE_LABELS for c in CRITERION_LABELS]
    return cols


def parse_survey(raw, mapping: dict | None = None) -> ParseResult:
    """Parse the delimited survey export into responses.

    ``raw`` is a text stream or string with a header row. ``mapping``
    optionally adapts a foreign schema: ``{"columns": {canonical: header},
    "modes": {cell value: canonical mode label}}``. Rows with missing or
    non-numeric fields are dropped and counted.
    """
    if isinstance(raw, str):
        raw = io.StringIO(raw)
    mapping = mapping or {}
    columns = dict(mapping.get("columns", {}))
    mode_values = {k.strip().lower(): v for k, v in mapping.get("modes", {}).items()}

    reader = csv.DictReader(raw)
    header = reader.fieldnames or []
    required = _canonical_columns()
    actual = {c: columns.get(c, c) for c in required}
    missing = [actual[c] for c in required if actual[c] not in header]
    if missing:
        raise ValueError(f"unrecognized survey schema: missing columns {missing}")
    inacc_col = columns.get("inaccessible_modes", "inaccessible_modes")
    has_inacc = inacc_col in header

    responses = []
    dropped = 0
    for row in reader:
        try:
            raw_mode = (row[actual["usual_mode"]] or "").strip().lower()
            raw_mode = mode_values.get(raw_mode, raw_mode)
            usual = Mode.from_label(raw_mode)
            distance = float(row[actual["distance_km"]])
            prios = np.array([float(row[actual[f"prio_{c}"]]) for c in CRITERION_LABELS])
            evals = np.array(
                [
                    [float(row[actual[f"eval_{m}_{c}"]]) for c in CRITERION_LABELS]
                    for m in MODE_LABELS
                ]
            )
        except (ValueError, TypeError):
            dropped += 1
            continue
        inaccessible = set()
        if has_inacc and row.get(inacc_col):
            for token in row[inacc_col].split(";"):
                token = token.strip().lower()
                if token:
                    token = mode_values.get(token, token)
                    inaccessible.add(Mode.from_label(token))
        responses.append(
            SurveyResponse(
                usual_mode=usual,
                distance_km=distance,
                priorities=prios,
                evaluations=evals,
                declared_inaccessible=inaccessible,
            )
        )
    return ParseResult(responses=responses, dropped=dropped)


def clean_distances(responses: list[SurveyResponse], caps: dict | None = None) -> list[SurveyResponse]:
    """Drop zero distances and aberrant outliers (per-mode caps, in km)."""
    caps = caps or dict(defaults.DISTANCE_CAPS)
    for cap in caps.values():
        if cap <= 0:
            raise ValueError("distance caps must be positive")
    out = []
    for r in responses:
        cap = caps.get(r.usual_mode.label, math.inf)
        if r.distance_km > 0 and r.distance_km <= cap:
            out.append(r)
    return out


def _by_mode(responses):
    groups = {m: [] for m in MODES}
    for r in responses:
        groups[r.usual_mode].append(r)
    return groups


def distance_stats(responses: list[SurveyResponse]) -> dict:
    """Sample distance statistics per usual-mode group."""
    stats = {}
    for mode, group in _by_mode(responses).items():
        if not group:
            raise ValueError(f"no responses for mode {mode.label}")
        d = np.array([r.distance_km for r in group])
        stats[mode.label] = {
            "mean": float(d.mean()),
            "stdev": float(d.std()),
            "min": float(d.min()),
            "max": float(d.max()),
            "median": float(np.median(d)),
        }
    return stats


def access_stats(responses: list[SurveyResponse]) -> dict:
    """Fraction of each usual-mode group declaring car / bus inaccessible.

    A mode's own users have probability 0 for it by construction.
    """
    stats = {}
    for mode, group in _by_mode(responses).items():
        n = len(group)
        no_car = no_bus = 0.0
        if n:
            no_car = sum(Mode.CAR in r.declared_inaccessible for r in group) / n
            no_bus = sum(Mode.BUS in r.declared_inaccessible for r in group) / n
        if mode is Mode.CAR:
            no_car = 0.0
        if mode is Mode.BUS:
            no_bus = 0.0
        stats[mode.label] = {"no_car": no_car, "no_bus": no_bus}
    return stats


def mean_priorities(responses: list[SurveyResponse]) -> dict:
    """Per-group mean priorities, rescaled from 0-10 to 0-100."""
    out = {}
    for mode, group in _by_mode(responses).items():
        if not group:
            raise ValueError(f"no responses for mode {mode.label}")
        out[mode.label] = np.mean([r.priorities for r in group], axis=0) * 10.0
    return out


def filter_prototypes(responses: list[SurveyResponse]) -> np.ndarray:
    """Characteristic perception filter of each mode's habitual users.

    Each factor is the group's mean evaluation of (mode, criterion) divided
    by the median over all responses, clamped to the filter bounds; a zero
    median yields a neutral factor.
    """
    all_evals = np.array([r.evaluations for r in responses])  # (n, 4, 6)
    medians = np.median(all_evals, axis=0)
    protos = np.ones((len(MODES), len(MODES), len(CRITERIA)))
    for g, group in _by_mode(responses).items():
        if not group:
            raise ValueError(f"no responses for mode {g.label}")
        means = np.mean([r.evaluations for r in group], axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(medians > 0, means / np.where(medians > 0, medians, 1.0), 1.0)
        protos[g] = np.clip(ratio, FILTER_MIN, FILTER_MAX)
    return protos


def objective_layout(responses: list[SurveyResponse], national_shares: dict) -> np.ndarray:
    """Average of the four groups' median evaluations, weighted by national
    modal shares, rescaled to 0-100."""
    shares = np.array([national_shares[m.label] for m in MODES])
    if abs(shares.sum() - 1.0) > 1e-9:
        raise ValueError("national shares must sum to 1")
    layout = np.zeros((len(MODES), len(CRITERIA)))
    for g, group in _by_mode(responses).items():
        if not group:
            raise ValueError(f"no responses for mode {g.label}")
        med = np.median([r.evaluations for r in group], axis=0)
        layout += shares[g] * med
    return np.clip(layout * 10.0, 0.0, VALUE_MAX)


def mode_score_stats(responses: list[SurveyResponse]) -> dict:
    """Per-respondent multi-criteria scores of each mode, aggregated:
    mean, stdev, median over all, plus means among users and non-users.
    Stays on the survey's 0-10 scale."""
    evals = np.array([r.evaluations for r in responses])  # (n, 4, 6)
    prios = np.array([r.priorities for r in responses])  # (n, 6)
    totals = prios.sum(axis=1)
    scores = np.einsum("nmc,nc->nm", evals, prios) / totals[:, None]
    usual = np.array([int(r.usual_mode) for r in responses])
    out = {}
    for m in MODES:
        col = scores[:, m]
        users = col[usual == int(m)]
        others = col[usual != int(m)]
        out[m.label] = {
            "mean": float(col.mean()),
            "stdev": float(col.std()),
            "median": float(np.median(col)),
            "users": float(users.mean()) if users.size else None,
            "non_users": float(others.mean()) if others.size else None,
        }
    return out


@dataclass
class CalibrationData:
    """Everything the simulator needs, derived from the survey or embedded."""

    national_shares: dict  # mode label -> fraction, sums to 1
    mean_priorities: dict  # mode label -> (6,) array on the 0-100 scale
    distance_stats: dict  # mode label -> {mean, stdev, min, max, median}
    access_prob: dict  # mode label -> {no_car, no_bus}
    prototypes: np.ndarray  # (group, mode, criterion) filter factors
    objective_layout: np.ndarray  # (4, 6) value grid
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        total = sum(self.national_shares[m] for m in MODE_LABELS)
        if abs(total - 1.0) > 1e-9:
            raise ValueError("national shares must sum to 1")
        if np.any(self.prototypes < FILTER_MIN) or np.any(self.prototypes > FILTER_MAX):
            raise ValueError("filter prototypes out of bounds")
        if np.any(self.objective_layout < 0) or np.any(self.objective_layout > VALUE_MAX):
            raise ValueError("objective layout out of bounds")

    def to_dict(self) -> dict:
        return {
            "national_shares": {m: self.national_shares[m] for m in MODE_LABELS},
            "mean_priorities": {m: list(map(float, self.mean_priorities[m])) for m in MODE_LABELS},
            "distance_stats": self.distance_stats,
            "access_prob": self.access_prob,
            "prototypes": self.prototypes.tolist(),
            "objective_layout": self.objective_layout.tolist(),
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CalibrationData":
        return cls(
            national_shares=dict(data["national_shares"]),
            mean_priorities={m: np.asarray(v, dtype=float) for m, v in data["mean_priorities"].items()},
            distance_stats=data["distance_stats"],
            access_prob=data["access_prob"],
            prototypes=np.asarray(data["prototypes"], dtype=float),
            objective_layout=np.asarray(data["objective_layout"], dtype=float),
            provenance=data.get("provenance", {}),
        )

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CalibrationData":
        return cls.from_dict(json.loads(text))


def calibrate(
    responses: list[SurveyResponse],
    national_shares: dict | None = None,
    caps: dict | None = None,
    source: str = "survey",
) -> CalibrationData:
    """Full pipeline from parsed responses to calibration data."""
    shares = national_shares or dict(defaults.NATIONAL_SHARES)
    total = len(responses)
    kept = clean_distances(responses, caps)
    return CalibrationData(
        national_shares=shares,
        mean_priorities=mean_priorities(kept),
        distance_stats=distance_stats(kept),
        access_prob=access_stats(kept),
        prototypes=filter_prototypes(kept),
        objective_layout=objective_layout(kept, shares),
        provenance={
            "source": source,
            "row_counts": {"total": total, "retained": len(kept)},
            "exclusions": {"distance": total - len(kept)},
        },
    )


def default_calibration() -> CalibrationData:
    """Calibration built from the embedded survey statistics.

    Group medians are not published, so the layout and prototypes use the
    published group means instead: a group's evaluation of its own mode is
    the users column, and of the other modes the pooled non-users column.
    """
    shares = dict(defaults.NATIONAL_SHARES)
    prios = {m: np.asarray(v, dtype=float) * 10.0 for m, v in defaults.MEAN_PRIORITIES.items()}

    protos = np.ones((len(MODES), len(MODES), len(CRITERIA)))
    layout = np.zeros((len(MODES), len(CRITERIA)))
    for m in MODES:
        ev = defaults.EVALUATIONS[m.label]
        overall = np.asarray(ev["all"], dtype=float)
        users = np.asarray(ev["users"], dtype=float)
        non_users = np.asarray(ev["non_users"], dtype=float)
        share = shares[m.label]
        layout[m] = 10.0 * (share * users + (1.0 - share) * non_users)
        for g in MODES:
            group_mean = users if g is m else non_users
            ratio = np.where(overall > 0, group_mean / np.where(overall > 0, overall, 1.0), 1.0)
            protos[g, m] = np.clip(ratio, FILTER_MIN, FILTER_MAX)

    return CalibrationData(
        national_shares=shares,
        mean_priorities=prios,
        distance_stats={m: dict(v) for m, v in defaults.DISTANCE_STATS.items()},
        access_prob={m: dict(v) for m, v in defaults.ACCESS_PROB.items()},
        prototypes=protos,
        objective_layout=np.clip(layout, 0.0, VALUE_MAX),
        provenance={
            "source": "embedded-defaults",
            "approximations": ["group medians approximated by published group means"],
        },
    )


def sample_agent(
    mode: Mode,
    calib: CalibrationData,
    rng: np.random.Generator,
    agent_id: int = 0,
    window_capacity: int = WINDOW_CAPACITY,
    walk_max_km: float = WALK_MAX_KM,
    bike_max_km: float = BIKE_MAX_KM,
) -> Agent:
    """Draw one synthetic agent whose usual mode is ``mode``.

    Priorities get an independent +/-20% variation per criterion; the
    distance is redrawn until consistent with the usual mode (a walker
    must actually be able to walk); car / bus access is Bernoulli from the
    calibrated probabilities, forced for the mode's own users.
    """
    mode = Mode(mode)
    base = calib.mean_priorities[mode.label]
    priorities = np.clip(base * rng.uniform(0.8, 1.2, size=len(CRITERIA)), 0.0, VALUE_MAX)

    stats = calib.distance_stats[mode.label]
    while True:
        distance = rng.normal(stats["mean"], stats["stdev"])
        if distance <= 0.1 or distance > 200.0:
            continue
        if mode is Mode.WALK and distance >= walk_max_km:
            continue
        if mode is Mode.BIKE and distance >= bike_max_km:
            continue
        break

    probs = calib.access_prob[mode.label]
    access_car = True if mode is Mode.CAR else rng.random() >= probs["no_car"]
    access_bus = True if mode is Mode.BUS else rng.random() >= probs["no_bus"]

    return Agent(
        id=agent_id,
        current_mode=mode,
        distance_km=float(distance),
        access_bus=bool(access_bus),
        access_car=bool(access_car),
        priorities=priorities,
        filter=calib.prototypes[mode].copy(),
        trips=TripWindow([mode] * window_capacity, capacity=window_capacity),
    )


def allocate_counts(n: int, shares: dict) -> dict:
    """Largest-remainder rounding of n * share, summing exactly to n."""
    exact = {m.label: n * shares[m.label] for m in MODES}
    counts = {m: int(math.floor(v)) for m, v in exact.items()}
    remainder = n - sum(counts.values())
    leftovers = sorted(
        ((exact[m.label] - counts[m.label], -int(m)) for m in MODES), reverse=True
    )
    for _, neg_mode in leftovers[:remainder]:
        counts[Mode(-neg_mode).label] += 1
    return counts


def sample_population(
    n: int,
    shares: dict,
    calib: CalibrationData,
    rng: np.random.Generator,
    window_capacity: int = WINDOW_CAPACITY,
    walk_max_km: float = WALK_MAX_KM,
    bike_max_km: float = BIKE_MAX_KM,
) -> list[Agent]:
    """Sample n agents with per-mode counts by largest-remainder rounding."""
    if n < 1:
        raise ValueError("empty population")
    counts = allocate_counts(n, shares)
    agents = []
    for mode in MODES:
        for _ in range(counts[mode.label]):
            agents.append(
                sample_agent(
                    mode,
                    calib,
                    rng,
                    agent_id=len(agents),
                    window_capacity=window_capacity,
                    walk_max_km=walk_max_km,
                    bike_max_km=bike_max_km,
                )
            )
    return agents
