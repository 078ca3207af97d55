import numpy as np
import pytest

from modalsim.calibration import default_calibration

MODE_LABELS = ["car", "bike", "bus", "walk"]
CRITERION_LABELS = ["ecology", "comfort", "price", "practicality", "time", "safety"]


@pytest.fixture(scope="session")
def calib():
    return default_calibration()


def survey_header():
    cols = ["usual_mode", "distance_km"]
    cols += [f"prio_{c}" for c in CRITERION_LABELS]
    cols += [f"eval_{m}_{c}" for m in MODE_LABELS for c in CRITERION_LABELS]
    cols.append("inaccessible_modes")
    return cols


def survey_row(usual, distance, priorities, evaluations, inaccessible=""):
    """Serialize one survey row; evaluations is a (4, 6) nested list."""
    cells = [usual, str(distance)]
    cells += [str(p) for p in priorities]
    cells += [str(v) for row in evaluations for v in row]
    cells.append(inaccessible)
    return ",".join(cells)


def make_survey(rows):
    return ",".join(survey_header()) + "\n" + "\n".join(rows) + "\n"


@pytest.fixture()
def synthetic_survey():
    """A small deterministic survey: 3 car users, 2 bus users, 2 cyclists,
    1 walker, with simple numbers that are easy to recompute by hand."""
    rng = np.random.default_rng(42)
    rows = []
    specs = [("car", 12.0)] * 3 + [("bus", 5.0)] * 2 + [("bike", 4.0)] * 2 + [("walk", 1.5)]
    for i, (mode, dist) in enumerate(specs):
        prios = np.round(rng.uniform(2, 9, 6), 1)
        evals = np.round(rng.uniform(1, 10, (4, 6)), 1)
        inacc = "car" if mode == "bus" and i % 2 == 0 else ""
        rows.append(survey_row(mode, dist + i * 0.5, prios, evals.tolist(), inacc))
    return make_survey(rows)
