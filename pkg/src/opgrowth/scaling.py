"""Quantitative reductions of Lanczos sequences.

Three straight-line hypotheses are supported, each a transform of
(n, b_n) data:

* ``linear_in_n``        y = b_n        vs  x = n
* ``linear_in_sqrt_n``   y = b_n        vs  x = sqrt(n)
* ``n_over_bn_vs_W``     y = n / b_n    vs  x = W(n)   (Lambert W)

A signed curvature diagnostic turns the visual "consistent with a
straight line" judgement into a number: the mean second difference of
the fit residuals, taken after a two-point average that exactly cancels
the even-odd alternation these sequences carry, normalized by the
ordinate scale of the window.  It is near zero for line-consistent data
and systematically nonzero when the residuals bow; the ordinate
normalization makes it comparable across the different transforms of
the same sequence.

The crossover analysis rescales weak-field deviations
``delta_b_n = (b_n(g) - b_n(0)) / b_n(0)`` by 1/g^2; curves from
different g collapse onto one function of n until each departs at its
crossover depth n_c(g).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .lanczos import LanczosSequence
from .oracles import lambert_w

FIT_KINDS = ("linear_in_n", "linear_in_sqrt_n", "n_over_bn_vs_W")


@dataclass
class ScalingReport:
    fit_kind: str
    window: tuple[int, int]
    slope: float
    intercept: float
    rms_residual: float
    curvature_diagnostic: float
    n: list[int] = field(default_factory=list)
    abscissa: list[float] = field(default_factory=list)
    ordinate: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "fit_kind": self.fit_kind,
            "window": list(self.window),
            "slope": self.slope,
            "intercept": self.intercept,
            "rms_residual": self.rms_residual,
            "curvature_diagnostic": self.curvature_diagnostic,
            "n": self.n,
            "abscissa": self.abscissa,
            "ordinate": self.ordinate,
        }


def _b_array(b) -> np.ndarray:
    if isinstance(b, LanczosSequence):
        return np.asarray(b.b, dtype=float)
    return np.asarray(b, dtype=float)


def transform_points(kind: str, n: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if kind == "linear_in_n":
        return n.astype(float), b
    if kind == "linear_in_sqrt_n":
        return np.sqrt(n), b
    if kind == "n_over_bn_vs_W":
        if np.any(b == 0.0):
            raise ValueError("b_n = 0 inside window; n/b_n transform undefined")
        return np.array([lambert_w(float(v)) for v in n]), n / b
    raise ValueError(f"unknown fit kind {kind!r}; choose one of {FIT_KINDS}")


def fit_scaling(b, kind: str, window: tuple[int, int]) -> ScalingReport:
    """Least-squares line of the transformed data on [n_lo, n_hi] (inclusive).

    Residuals and the curvature diagnostic are computed on the stated
    window only.
    """
    arr = _b_array(b)
    n_lo, n_hi = window
    if n_lo < 1 or n_hi > len(arr) - 1:
        raise ValueError(f"window {window} outside available n range [1, {len(arr) - 1}]")
    if n_hi - n_lo + 1 < 4:
        raise ValueError("window too small: need at least 4 points")
    n = np.arange(n_lo, n_hi + 1)
    x, y = transform_points(kind, n, arr[n_lo : n_hi + 1])
    slope, intercept = np.polyfit(x, y, 1)
    r = y - (slope * x + intercept)
    rms = float(np.sqrt(np.mean(r * r)))
    f = 0.5 * (r[:-1] + r[1:])  # cancels the even-odd alternation of b_n exactly
    ddr = f[2:] - 2.0 * f[1:-1] + f[:-2]
    y_scale = float(np.mean(np.abs(y)))
    curvature = float(np.mean(ddr) / y_scale) if y_scale > 0 else 0.0
    return ScalingReport(
        fit_kind=kind,
        window=(int(n_lo), int(n_hi)),
        slope=float(slope),
        intercept=float(intercept),
        rms_residual=rms,
        curvature_diagnostic=curvature,
        n=[int(v) for v in n],
        abscissa=[float(v) for v in x],
        ordinate=[float(v) for v in y],
    )


@dataclass
class CollapseReport:
    g_values: list[float]
    n: list[int]
    scaled_curves: list[list[float]]  # one curve per g, aligned with ``n``
    pairwise_collapse_error: float
    n_c_estimates: list[int | None]
    n_c_slope: float | None  # d n_c / d |ln g|
    per_decade_shifts: list[float]
    threshold: float

    def to_dict(self) -> dict:
        return {
            "g_values": self.g_values,
            "n": self.n,
            "scaled_curves": self.scaled_curves,
            "pairwise_collapse_error": self.pairwise_collapse_error,
            "n_c_estimates": self.n_c_estimates,
            "n_c_slope": self.n_c_slope,
            "per_decade_shifts": self.per_decade_shifts,
            "threshold": self.threshold,
        }


def collapse(
    b_ref,
    runs: list[tuple[float, object]],
    threshold: float = 0.2,
) -> CollapseReport:
    """Crossover-collapse analysis of weak-field runs against a zero-field
    reference.

    For each run, the scaled deviation ``g^-2 (b_n(g) - b_n(0))/b_n(0)``
    is compared against the smallest-g curve (taken as the tracer of the
    common scaling function): the crossover depth n_c(g) is the first n
    where it departs by more than ``threshold`` relatively.  No n_c is
    reported for the smallest-g run itself, nor for runs that never
    depart.  The pairwise collapse error is the maximum over curve pairs
    of the median relative deviation on the shared pre-crossover window.

    Sequences of unequal length are truncated to the shared n range.
    """
    if len(runs) < 2:
        raise ValueError("need at least two field values to test a collapse")
    ref = _b_array(b_ref)
    gs = [float(g) for g, _ in runs]
    if len(set(gs)) != len(gs) or any(g <= 0 for g in gs):
        raise ValueError("field values must be positive and distinct")
    order = np.argsort(gs)  # ascending g; index 0 is the reference curve
    gs = [gs[i] for i in order]
    seqs = [_b_array(runs[i][1]) for i in order]
    n_common = min(len(ref), *(len(s) for s in seqs)) - 1
    if n_common < 2:
        raise ValueError("sequences too short for a collapse analysis")
    n = np.arange(1, n_common + 1)  # b_0 = 0 is excluded by construction
    if np.any(ref[n] == 0.0):
        raise ValueError("reference b_n vanishes inside the analysis range")
    curves = [(s[n] - ref[n]) / ref[n] / g**2 for g, s in zip(gs, seqs)]

    s_ref = curves[0]
    floor = 1e-300
    n_c: list[int | None] = [None]
    for c in curves[1:]:
        dev = np.abs(c - s_ref) / np.maximum(np.abs(s_ref), floor)
        hits = np.flatnonzero(dev > threshold)
        n_c.append(int(n[hits[0]]) if hits.size else None)

    detected = [v for v in n_c if v is not None]
    pre_end = min(detected) if detected else n_common + 1
    shared = n < pre_end
    if shared.any():
        err = 0.0
        for i in range(len(curves)):
            for j in range(i + 1, len(curves)):
                dev = np.abs(curves[i][shared] - curves[j][shared]) / np.maximum(
                    np.abs(s_ref[shared]), floor
                )
                err = max(err, float(np.median(dev)))
    else:
        err = math.inf
    pts = [(abs(math.log(g)), v) for g, v in zip(gs, n_c) if v is not None]
    slope = None
    if len(pts) >= 2:
        xs, ys = zip(*pts)
        slope = float(np.polyfit(xs, ys, 1)[0])
    detected_pairs = [(g, v) for g, v in zip(gs, n_c) if v is not None]
    shifts = []
    for (g1, v1), (g2, v2) in zip(detected_pairs, detected_pairs[1:]):
        shifts.append((v1 - v2) / math.log10(g2 / g1))
    return CollapseReport(
        g_values=gs,
        n=[int(v) for v in n],
        scaled_curves=[[float(v) for v in c] for c in curves],
        pairwise_collapse_error=err,
        n_c_estimates=n_c,
        n_c_slope=slope,
        per_decade_shifts=[float(s) for s in shifts],
        threshold=threshold,
    )
