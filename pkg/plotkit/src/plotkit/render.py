"""Deterministic rendering of operator-growth CSV artifacts.

Five plot kinds, mirroring the analysis pipeline's straight-line
hypotheses and reports:

==============  =======================================  =================
kind            expects columns                          axes
==============  =======================================  =================
b_vs_n          n, b_n                                   b_n vs n
b_vs_sqrt_n     n, b_n                                   b_n vs sqrt(n)
n_over_b_vs_w   n, b_n, abscissa, ordinate (fit CSV)     n/b_n vs W(n)
collapse        n, g, scaled_delta_b                     g^-2 db_n vs n
dynamics        t, C and/or t, mean_depth                C or depth vs t
==============  =======================================  =================

The Lambert-W abscissa is consumed from the fit CSV emitted by the
pipeline (its ``abscissa`` column), never recomputed here, so plots and
fits share one transform by construction.

Rendering is pure: fixed figure geometry, bundled fonts, no timestamps,
a fixed SVG hash salt.  Identical inputs produce identical image bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

KINDS = ("b_vs_n", "b_vs_sqrt_n", "n_over_b_vs_w", "collapse", "dynamics")

_RC = {
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "font.family": "DejaVu Sans",
    "font.size": 10,
    "svg.hashsalt": "plotkit",
    "axes.grid": True,
    "grid.alpha": 0.3,
}


class RenderError(ValueError):
    """Bad inputs: missing files, wrong columns for the plot kind."""


@dataclass
class PlotSpec:
    kind: str
    inputs: list[Path]
    output: Path
    title: str | None = None
    logy: bool = False
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RenderError(f"unknown plot kind {self.kind!r}; choose one of {KINDS}")
        if not self.inputs:
            raise RenderError("no input files given")
        self.inputs = [Path(p) for p in self.inputs]
        self.output = Path(self.output)


def _read_csv(path: Path) -> tuple[list[str], "list[list[float]]"]:
    if not path.exists():
        raise RenderError(f"{path}: no such file")
    lines = path.read_text().strip().splitlines()
    if len(lines) < 2:
        raise RenderError(f"{path}: empty CSV")
    header = [h.strip() for h in lines[0].split(",")]
    rows = []
    for ln in lines[1:]:
        if ln.strip():
            rows.append([float(v) for v in ln.split(",")])
    return header, rows


def _columns(path: Path, *names: str) -> list[list[float]]:
    header, rows = _read_csv(path)
    for name in names:
        if name not in header:
            raise RenderError(f"{path}: column {name!r} required for this plot kind "
                              f"(found {header})")
    idx = [header.index(n) for n in names]
    return [[row[i] for row in rows] for i in idx]


def _label_for(path: Path) -> str:
    """Legend label from the sidecar metadata (g value, observable)."""
    side = path.with_suffix(".json")
    if side.exists():
        try:
            meta = json.loads(side.read_text())
        except json.JSONDecodeError:
            return path.stem
        g = meta.get("meta", {}).get("g")
        if g is None:
            g = meta.get("config", {}).get("model", {}).get("g")
        obs = meta.get("config", {}).get("model", {}).get("observable")
        parts = []
        if obs is not None:
            parts.append(f"obs {obs}")
        if g is not None:
            parts.append(f"g = {g:g}")
        if parts:
            return ", ".join(parts)
    return path.stem


def render(spec: PlotSpec) -> Path:
    """Draw the figure and write it; returns the output path."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        try:
            if spec.kind in ("b_vs_n", "b_vs_sqrt_n"):
                for i, path in enumerate(spec.inputs):
                    n, b = _columns(path, "n", "b_n")
                    x = [math.sqrt(v) for v in n] if spec.kind == "b_vs_sqrt_n" else n
                    ax.plot(x, b, marker="o", ms=3, lw=1,
                            label=spec.labels[i] if i < len(spec.labels) else _label_for(path))
                ax.set_xlabel(r"$\sqrt{n}$" if spec.kind == "b_vs_sqrt_n" else "$n$")
                ax.set_ylabel("$b_n$")
            elif spec.kind == "n_over_b_vs_w":
                for i, path in enumerate(spec.inputs):
                    w, y = _columns(path, "abscissa", "ordinate")
                    ax.plot(w, y, marker="o", ms=3, lw=1,
                            label=spec.labels[i] if i < len(spec.labels) else _label_for(path))
                ax.set_xlabel("$W(n)$")
                ax.set_ylabel("$n / b_n$")
            elif spec.kind == "collapse":
                for path in spec.inputs:
                    n, g, s = _columns(path, "n", "g", "scaled_delta_b")
                    by_g: dict[float, list[tuple[float, float]]] = {}
                    for ni, gi, si in zip(n, g, s):
                        by_g.setdefault(gi, []).append((ni, si))
                    for gi in sorted(by_g):
                        pts = sorted(by_g[gi])
                        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                                marker="o", ms=3, lw=1, label=f"g = {gi:g}")
                ax.set_xlabel("$n$")
                ax.set_ylabel(r"$g^{-2}\,\Delta b_n$")
                ax.set_yscale("log")
            elif spec.kind == "dynamics":
                for i, path in enumerate(spec.inputs):
                    header, rows = _read_csv(path)
                    if header[0] != "t" or len(header) < 2:
                        raise RenderError(f"{path}: dynamics plots need 't,<series>' columns")
                    t = [r[0] for r in rows]
                    y = [r[1] for r in rows]
                    base = spec.labels[i] if i < len(spec.labels) else _label_for(path)
                    ax.plot(t, y, lw=1.2, label=f"{base}: {header[1]}")
                ax.set_xlabel("$t$")
                ax.set_ylabel("value")
            if spec.logy and spec.kind != "collapse":
                ax.set_yscale("log")
            if spec.title:
                ax.set_title(spec.title)
            ax.legend(loc="best", fontsize=8)
            spec.output.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(spec.output, metadata=_strip_metadata(spec.output))
        finally:
            plt.close(fig)
    return spec.output


def _strip_metadata(output: Path) -> dict:
    # no dates or host software strings: byte-identical reruns
    suffix = output.suffix.lower()
    if suffix == ".svg":
        return {"Date": None, "Creator": "plotkit", "Source": None}
    if suffix == ".png":
        return {"Software": "plotkit"}
    return {}
