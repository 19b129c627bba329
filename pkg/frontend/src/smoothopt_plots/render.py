"""Render regret-experiment CSVs as figures.

Input is the experiment CSV contract: header
`t,mean_regret,std_regret,bound`, one row per checkpoint.  The figure
shows the mean per-round regret line with a +-1 standard deviation band
and the theoretical bound as a dashed overlay.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

REQUIRED_COLUMNS = ("t", "mean_regret", "std_regret", "bound")


@dataclass
class RunSeries:
    """One CSV's columns, parsed."""

    label: str
    t: list[int]
    mean_regret: list[float]
    std_regret: list[float]
    bound: list[float]


@dataclass
class PlotSpec:
    inputs: list[str]
    output: str
    title: str = ""
    logx: bool = False


def load_series(path: str) -> RunSeries:
    """Parse one CSV; raises ValueError on missing columns or bad rows."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in REQUIRED_COLUMNS if c not in (reader.fieldnames or [])]
        if missing:
            raise ValueError(f"{path}: missing columns {', '.join(missing)}")
        t, mean, std, bound = [], [], [], []
        for row in reader:
            t.append(int(row["t"]))
            mean.append(float(row["mean_regret"]))
            std.append(float(row["std_regret"]))
            bound.append(float(row["bound"]))
    if not t:
        raise ValueError(f"{path}: no data rows")
    label = path.rsplit("/", 1)[-1].removesuffix(".csv")
    return RunSeries(label, t, mean, std, bound)


def render(spec: PlotSpec) -> list[RunSeries]:
    """Write the figure and return the series that were drawn."""
    series = [load_series(p) for p in spec.inputs]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for s in series:
        (line,) = ax.plot(s.t, s.mean_regret, label=s.label)
        lo = [m - d for m, d in zip(s.mean_regret, s.std_regret)]
        hi = [m + d for m, d in zip(s.mean_regret, s.std_regret)]
        ax.fill_between(s.t, lo, hi, color=line.get_color(), alpha=0.2)
        ax.plot(s.t, s.bound, linestyle="--", color=line.get_color(),
                label=f"{s.label} bound")
    if spec.logx:
        ax.set_xscale("log")
    ax.set_xlabel("timesteps")
    ax.set_ylabel("per-round regret")
    if spec.title:
        ax.set_title(spec.title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output)
    plt.close(fig)
    return series
