"""Regret-figure renderer for experiment CSVs."""

from .render import PlotSpec, RunSeries, load_series, render

__all__ = ["PlotSpec", "RunSeries", "load_series", "render"]
