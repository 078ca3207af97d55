"""Render the three standard figures from an exported time series.

Mirrors the simulator's live plots: modal distribution, mean satisfaction
per mode, and per-tick decision-type counters. Figures are written as PNG
files next to the delimited output.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

MODE_COLORS = {"car": "tab:red", "bike": "tab:green", "bus": "tab:blue", "walk": "tab:orange"}
COUNTER_LABELS = {
    "n_by_habit": "by habit",
    "n_habit_contrary": "habit contrary",
    "n_biased": "biased",
    "n_constrained": "constrained",
}


def read_series_csv(path) -> dict[str, list]:
    """Read an exported per-seed CSV into column lists; empty satisfaction
    cells become None."""
    columns: dict[str, list] = {}
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        for name in reader.fieldnames or []:
            columns[name] = []
        for row in reader:
            for name, cell in row.items():
                if cell == "":
                    columns[name].append(None)
                elif name == "tick" or name.startswith("n_"):
                    columns[name].append(int(cell))
                else:
                    columns[name].append(float(cell))
    if "tick" not in columns:
        raise ValueError(f"{path}: not a modalsim series file")
    return columns


def render_report(series_csv, out_dir) -> list[Path]:
    """Write modal_shares.png, satisfaction.png and decisions.png."""
    cols = read_series_csv(series_csv)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ticks = cols["tick"]
    written = []

    fig, ax = plt.subplots(figsize=(8, 4.5))
    shares = [cols[f"share_{m}"] for m in MODE_COLORS]
    ax.stackplot(ticks, shares, labels=list(MODE_COLORS), colors=list(MODE_COLORS.values()), alpha=0.8)
    ax.set_xlabel("tick")
    ax.set_ylabel("modal share")
    ax.set_ylim(0, 1)
    ax.legend(loc="upper right", ncol=4, fontsize="small")
    ax.set_title("Modal distribution")
    path = out_dir / "modal_shares.png"
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(8, 4.5))
    for m, color in MODE_COLORS.items():
        sat = [float("nan") if v is None else v for v in cols[f"sat_{m}"]]
        ax.plot(ticks, sat, color=color, label=m)
    ax.set_xlabel("tick")
    ax.set_ylabel("mean satisfaction")
    ax.set_ylim(0, 100)
    ax.legend(fontsize="small")
    ax.set_title("Mean satisfaction by mode")
    path = out_dir / "satisfaction.png"
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(8, 4.5))
    for col, label in COUNTER_LABELS.items():
        ax.plot(ticks, cols[col], label=label)
    ax.set_xlabel("tick")
    ax.set_ylabel("decisions per tick")
    ax.legend(fontsize="small")
    ax.set_title("Decision types")
    path = out_dir / "decisions.png"
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    return written
