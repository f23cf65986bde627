"""Krylov-basis construction: the two-term Lanczos recursion.

Works in the real-coefficient convention of :mod:`opgrowth.model`,
where the represented Liouvillian map K (with [H, A] = i*K(A)) is
antisymmetric.  The Gram-Schmidt step therefore carries a plus sign,

    |A_n) = K|O_{n-1}) + b_{n-1} |O_{n-2}),    b_n = ||A_n||,

because (O_{n-2}| K |O_{n-1}) = -b_{n-1} for an antisymmetric K.  The
coefficients b_n are norms and agree exactly with the Hermitian-picture
recursion; the dense oracle (which uses plain matrix commutators)
cross-checks this in the test suite.

Only the two most recent basis vectors are held.  With epsilon = 0 the
computation is exact up to floating-point rounding.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .model import HamiltonianSpec, ObservableSpec
from .packed import (
    PackedVector,
    apply_liouvillian_packed,
    pack_hamiltonian_terms,
    packed_inner,
)

_EXHAUSTION_TOL = 1e-12  # ||A_n|| below this means the Krylov space closed

STATUS_OK = "ok"
STATUS_EXHAUSTED = "krylov_exhausted"
STATUS_TERM_CAP = "term_cap_exceeded"


class MemoryBudgetExceeded(RuntimeError):
    """Raised when a stored-term cap is hit and partial results are not wanted."""


@dataclass
class LanczosMeta:
    h: float
    g: float
    g_profile: str
    observable: str
    n_max: int
    epsilon: float
    n_reached: int = 0
    status: str = STATUS_OK
    discarded_weight: float = 0.0  # rss of all epsilon-pruned coefficients
    term_counts: list[int] = field(default_factory=list)  # |O_n| per step, n = 0..
    peak_terms: int = 0
    max_terms: int | None = None
    wall_time_s: float = 0.0

    def to_dict(self) -> dict:
        return {
            "h": self.h,
            "g": self.g,
            "g_profile": self.g_profile,
            "observable": self.observable,
            "n_max": self.n_max,
            "epsilon": self.epsilon,
            "n_reached": self.n_reached,
            "status": self.status,
            "discarded_weight": self.discarded_weight,
            "term_counts": self.term_counts,
            "peak_terms": self.peak_terms,
            "max_terms": self.max_terms,
            "wall_time_s": self.wall_time_s,
        }


@dataclass
class LanczosSequence:
    """b[0] = 0 plus b[n] for 1 <= n <= n_reached, with run provenance."""

    b: list[float]
    meta: LanczosMeta

    def __post_init__(self):
        if not self.b or self.b[0] != 0.0:
            raise ValueError("b[0] must be 0")
        if any(v <= 0.0 for v in self.b[1:]):
            raise ValueError("computed b[n] must be positive")

    @property
    def n_reached(self) -> int:
        return len(self.b) - 1


def _frame_for_run(obs: ObservableSpec, n_max: int) -> tuple[int, int]:
    """Site frame guaranteed to contain the support after n_max applications
    (support grows by at most one site per side per application)."""
    s = obs.string()
    lo = s.window_start - n_max - 1
    hi = s.window_end - 1 + n_max + 1
    return lo, hi - lo + 1


def run_lanczos(
    H: HamiltonianSpec,
    O0: ObservableSpec,
    n_max: int,
    epsilon: float = 0.0,
    max_terms: int | None = None,
    flush_rows: int = 40_000_000,
) -> LanczosSequence:
    """Lanczos coefficients for observable O0 under Hamiltonian H.

    Stops early with status "krylov_exhausted" when ||A_n|| vanishes and
    with status "term_cap_exceeded" when a step would store more than
    ``max_terms`` strings; in both cases the b computed so far are
    returned (never a trailing zero entry).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    t0 = time.perf_counter()
    meta = LanczosMeta(
        h=H.transverse_h,
        g=H.longitudinal_g,
        g_profile=H.g_profile,
        observable=O0.kind,
        n_max=n_max,
        epsilon=epsilon,
        max_terms=max_terms,
    )
    frame_start, frame_sites = _frame_for_run(O0, n_max)
    n_limbs = max(1, -(-frame_sites // 64))
    prev = PackedVector.from_operator_vector(O0.vector(), frame_start, frame_sites)
    prevprev: PackedVector | None = None
    b = [0.0]
    meta.term_counts.append(len(prev))
    meta.peak_terms = len(prev)
    discarded_sq = 0.0

    for n in range(1, n_max + 1):
        window = prev.support_window()
        if window is None:
            meta.status = STATUS_EXHAUSTED
            break
        terms = pack_hamiltonian_terms(H, window, frame_start, n_limbs)
        tail = (b[n - 1], prevprev) if prevprev is not None else None
        A = apply_liouvillian_packed(terms, prev, tail=tail, flush_rows=flush_rows)
        bn = A.norm()
        if bn <= _EXHAUSTION_TOL:
            meta.status = STATUS_EXHAUSTED
            break
        b.append(bn)
        On = A.scaled(1.0 / bn)
        if epsilon > 0.0:
            On, rss = On.prune(epsilon)
            discarded_sq += rss * rss
        meta.term_counts.append(len(On))
        meta.peak_terms = max(meta.peak_terms, len(On))
        if max_terms is not None and len(On) > max_terms:
            meta.status = STATUS_TERM_CAP
            break
        prevprev, prev = prev, On

    meta.n_reached = len(b) - 1
    meta.discarded_weight = discarded_sq**0.5
    meta.wall_time_s = time.perf_counter() - t0
    return LanczosSequence(b, meta)


def krylov_basis_overlap_check(
    H: HamiltonianSpec,
    O0: ObservableSpec,
    n_check: int,
    max_terms: int | None = 5_000_000,
) -> float:
    """Max |(O_i|O_j)| over i != j <= n_check for the computed basis.

    Requires storing all basis vectors, so n_check is capped at 20 and a
    term budget guards memory.  Exact arithmetic would give 0; the value
    measures the floating-point orthogonality loss of the two-term
    recursion.
    """
    if n_check > 20:
        raise ValueError("n_check capped at 20 (memory-bounded check)")
    frame_start, frame_sites = _frame_for_run(O0, n_check)
    n_limbs = max(1, -(-frame_sites // 64))
    basis = [PackedVector.from_operator_vector(O0.vector(), frame_start, frame_sites)]
    b_prev = 0.0
    total = len(basis[0])
    for n in range(1, n_check + 1):
        window = basis[-1].support_window()
        if window is None:
            break
        terms = pack_hamiltonian_terms(H, window, frame_start, n_limbs)
        tail = (b_prev, basis[-2]) if len(basis) > 1 else None
        A = apply_liouvillian_packed(terms, basis[-1], tail=tail)
        bn = A.norm()
        if bn <= _EXHAUSTION_TOL:
            break
        basis.append(A.scaled(1.0 / bn))
        b_prev = bn
        total += len(basis[-1])
        if max_terms is not None and total > max_terms:
            raise MemoryBudgetExceeded(f"overlap check exceeded {max_terms} stored terms")
    worst = 0.0
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            worst = max(worst, abs(packed_inner(basis[i], basis[j])))
    return worst
