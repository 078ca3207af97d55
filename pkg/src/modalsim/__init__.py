"""modalsim: an agent-based simulator of urban modal choice with
perception biases and habit dynamics."""

from .model import (
    Agent,
    Criterion,
    Decision,
    Mode,
    TripWindow,
    available_modes,
    best_mode,
    blend_filter,
    decide,
    habit_frequencies,
    habit_triggers,
    perceive,
    record_trip,
    score,
)
from .calibration import CalibrationData, default_calibration
from .engine import Intervention, MetricsSnapshot, SimConfig, SimState, init, step

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "CalibrationData",
    "Criterion",
    "Decision",
    "Intervention",
    "MetricsSnapshot",
    "Mode",
    "SimConfig",
    "SimState",
    "TripWindow",
    "available_modes",
    "best_mode",
    "blend_filter",
    "decide",
    "default_calibration",
    "habit_frequencies",
    "habit_triggers",
    "init",
    "perceive",
    "record_trip",
    "score",
    "step",
    "__version__",
]
