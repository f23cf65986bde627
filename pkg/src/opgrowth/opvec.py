"""Sparse vectors in operator Hilbert space.

An :class:`OperatorVector` is a real-coefficient superposition of
canonical Pauli strings.  Pauli strings are orthonormal under the
infinite-temperature inner product ``(A|B) = Tr[A^dag B] / D``, so the
inner product reduces to a sparse dot product over shared strings.

Coefficients are real by the global-phase convention used throughout:
one power of i is extracted per Liouvillian application (see
:mod:`opgrowth.model`), which leaves every vector met by the Lanczos
recursion real in the Pauli basis.

All reductions (norm, inner product, serialization) iterate in
canonical string order, so results are bit-reproducible run to run.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

from .pauli import PauliString


class OperatorVector:
    """Mapping from canonical PauliString to a nonzero real coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[PauliString, float] | Iterable[tuple[PauliString, float]] = ()):
        data = dict(terms) if not isinstance(terms, dict) else dict(terms)
        self._terms = {s: float(c) for s, c in data.items() if c != 0.0}

    def items(self) -> Iterator[tuple[PauliString, float]]:
        """Terms in canonical string order."""
        for s in sorted(self._terms, key=PauliString.sort_key):
            yield s, self._terms[s]

    def coefficient(self, string: PauliString) -> float:
        return self._terms.get(string, 0.0)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, string: PauliString) -> bool:
        return string in self._terms

    def __eq__(self, other) -> bool:
        return isinstance(other, OperatorVector) and self._terms == other._terms

    def __repr__(self) -> str:
        body = " + ".join(f"{c:g}*[{s}]" for s, c in self.items())
        return f"OperatorVector({body or '0'})"

    def support_window(self) -> tuple[int, int] | None:
        """[lo, hi] site range covered by non-identity content, or None if empty."""
        lo, hi = None, None
        for s in self._terms:
            if s.is_identity:
                continue
            lo = s.window_start if lo is None else min(lo, s.window_start)
            e = s.window_end - 1
            hi = e if hi is None else max(hi, e)
        if lo is None:
            return None
        return lo, hi

    # -- serialization: one term per line, "coefficient<TAB>label" --

    def to_lines(self) -> list[str]:
        return [f"{c:.17g}\t{s.label()}" for s, c in self.items()]

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "OperatorVector":
        terms = {}
        for line in lines:
            line = line.strip()
            if not line:
                continue
            coeff, _, label = line.partition("\t")
            terms[PauliString.from_label(label)] = float(coeff)
        return cls(terms)


def basis_vector(string: PauliString, coeff: float = 1.0) -> OperatorVector:
    return OperatorVector({string: coeff})


def inner_product(a: OperatorVector, b: OperatorVector) -> float:
    """Sum of coefficient products over shared strings, in canonical order."""
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    shared = [s for s in small._terms if s in large._terms]
    shared.sort(key=PauliString.sort_key)
    return math.fsum(small._terms[s] * large._terms[s] for s in shared)


def norm(a: OperatorVector) -> float:
    return math.sqrt(math.fsum(c * c for _, c in a.items()))


def axpy(alpha: float, x: OperatorVector, y: OperatorVector) -> OperatorVector:
    """alpha*x + y, with exact-zero results pruned."""
    out = dict(y._terms)
    for s, c in x._terms.items():
        new = alpha * c + out.get(s, 0.0)
        if new == 0.0:
            out.pop(s, None)
        else:
            out[s] = new
    return OperatorVector(out)


def scale(alpha: float, x: OperatorVector) -> OperatorVector:
    return OperatorVector({s: alpha * c for s, c in x._terms.items()})


def prune(a: OperatorVector, epsilon: float) -> tuple[OperatorVector, float]:
    """Drop terms with |coeff| < epsilon.

    Returns the pruned vector and the root-sum-square of the discarded
    coefficients, for error accounting.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    if epsilon == 0.0:
        return a, 0.0
    kept, dropped_sq = {}, 0.0
    for s, c in a.items():
        if abs(c) < epsilon:
            dropped_sq += c * c
        else:
            kept[s] = c
    return OperatorVector(kept), math.sqrt(dropped_sq)
