"""Deterministic figure rendering for operator-growth CSV artifacts."""

__version__ = "0.1.0"

from .render import KINDS, PlotSpec, RenderError, render

__all__ = ["KINDS", "PlotSpec", "RenderError", "render", "__version__"]
