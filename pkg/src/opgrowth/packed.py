"""Bit-packed operator vectors: the engine behind the Lanczos recursion.

Chaotic-field runs reach tens of millions of Pauli strings, so strings
are stored as rows of uint64 limbs (bit ``l`` of limb ``m`` is lattice
site ``frame_start + 64*m + l``) with one float64 coefficient per row.
Rows are kept sorted lexicographically by (x-pattern, z-pattern), which
fixes a canonical reduction order: all merges, norms and inner products
are bit-reproducible.

The per-step Liouvillian kernel visits each Hamiltonian term once and
processes all strings at a time with vectorized popcounts:
anticommutation is a symplectic-parity mask, products are XORs, and the
i-power bookkeeping reduces to popcount deltas on the term's limbs.
Produced rows are merged by sort-and-reduce in bounded-size batches so
peak memory stays controlled.

Everything here is internal; the public contracts live in
:mod:`opgrowth.opvec`, :mod:`opgrowth.model` and
:mod:`opgrowth.lanczos`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ConventionError, HamiltonianSpec, hamiltonian_terms_in_window
from .opvec import OperatorVector
from .pauli import PauliString

_LIMB_BITS = 64

if hasattr(np, "bitwise_count"):
    def _popcount(a: np.ndarray) -> np.ndarray:
        return np.bitwise_count(a).astype(np.int64)
else:  # SWAR fallback for numpy < 2.0
    def _popcount(a: np.ndarray) -> np.ndarray:
        a = a - ((a >> np.uint64(1)) & np.uint64(0x5555555555555555))
        a = (a & np.uint64(0x3333333333333333)) + ((a >> np.uint64(2)) & np.uint64(0x3333333333333333))
        a = (a + (a >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return ((a * np.uint64(0x0101010101010101)) >> np.uint64(56)).astype(np.int64)


def _int_to_limbs(value: int, n_limbs: int) -> np.ndarray:
    mask = (1 << _LIMB_BITS) - 1
    return np.array([(value >> (_LIMB_BITS * m)) & mask for m in range(n_limbs)], dtype=np.uint64)


def _limbs_to_int(limbs: np.ndarray) -> int:
    value = 0
    for m in range(len(limbs) - 1, -1, -1):
        value = (value << _LIMB_BITS) | int(limbs[m])
    return value


@dataclass
class PackedVector:
    """Sorted struct-of-arrays operator vector in a fixed site frame."""

    frame_start: int
    x: np.ndarray  # [N, L] uint64
    z: np.ndarray  # [N, L] uint64
    c: np.ndarray  # [N] float64

    def __len__(self) -> int:
        return self.x.shape[0]

    @property
    def n_limbs(self) -> int:
        return self.x.shape[1]

    def norm(self) -> float:
        return math.sqrt(float(np.add.reduce(self.c * self.c)))

    def scaled(self, alpha: float) -> "PackedVector":
        return PackedVector(self.frame_start, self.x, self.z, self.c * alpha)

    def support_window(self) -> tuple[int, int] | None:
        """[lo, hi] lattice sites carrying any non-identity content."""
        if len(self) == 0:
            return None
        occ = np.bitwise_or.reduce(self.x | self.z, axis=0)
        occ_int = _limbs_to_int(occ)
        if occ_int == 0:
            return None
        lo = (occ_int & -occ_int).bit_length() - 1
        hi = occ_int.bit_length() - 1
        return self.frame_start + lo, self.frame_start + hi

    def prune(self, epsilon: float) -> tuple["PackedVector", float]:
        """Drop |coeff| < epsilon; returns (vector, rss of dropped coeffs)."""
        if epsilon <= 0.0:
            return self, 0.0
        keep = np.abs(self.c) >= epsilon
        if keep.all():
            return self, 0.0
        dropped = self.c[~keep]
        out = PackedVector(self.frame_start, self.x[keep], self.z[keep], self.c[keep])
        return out, math.sqrt(float(np.add.reduce(dropped * dropped)))

    # -- conversions ---------------------------------------------------

    @classmethod
    def from_operator_vector(
        cls, v: OperatorVector, frame_start: int, frame_sites: int
    ) -> "PackedVector":
        n_limbs = max(1, -(-frame_sites // _LIMB_BITS))
        rows = []
        for s, coeff in v.items():
            shift = s.window_start - frame_start
            if shift < 0 or (not s.is_identity and shift + s.window_length > frame_sites):
                raise ValueError(f"string {s} does not fit frame [{frame_start}, +{frame_sites})")
            rows.append((s.x_bits << shift, s.z_bits << shift, coeff))
        x = np.zeros((len(rows), n_limbs), dtype=np.uint64)
        z = np.zeros((len(rows), n_limbs), dtype=np.uint64)
        c = np.zeros(len(rows))
        for i, (xb, zb, coeff) in enumerate(rows):
            x[i] = _int_to_limbs(xb, n_limbs)
            z[i] = _int_to_limbs(zb, n_limbs)
            c[i] = coeff
        return _sort_reduce(cls(frame_start, x, z, c))

    def to_operator_vector(self) -> OperatorVector:
        terms = {}
        for i in range(len(self)):
            xb = _limbs_to_int(self.x[i])
            zb = _limbs_to_int(self.z[i])
            terms[PauliString(self.frame_start, xb, zb)] = float(self.c[i])
        return OperatorVector(terms)


def _sort_reduce(vec: PackedVector) -> PackedVector:
    """Sort rows canonically and sum coefficients of duplicate strings;
    exact zeros are pruned."""
    n, L = vec.x.shape
    if n == 0:
        return vec
    keys = tuple(vec.z[:, m] for m in range(L)) + tuple(vec.x[:, m] for m in range(L))
    order = np.lexsort(keys)
    xs, zs, cs = vec.x[order], vec.z[order], vec.c[order]
    # a row starts a new run iff any limb differs from the previous row
    new_run = np.ones(n, dtype=bool)
    if n > 1:
        same_all = np.ones(n - 1, dtype=bool)
        for m in range(L):
            same_all &= xs[1:, m] == xs[:-1, m]
            same_all &= zs[1:, m] == zs[:-1, m]
        new_run[1:] = ~same_all
    starts = np.flatnonzero(new_run)
    sums = np.add.reduceat(cs, starts)
    keep = sums != 0.0
    starts = starts[keep]
    return PackedVector(vec.frame_start, xs[starts], zs[starts], sums[keep])


@dataclass(frozen=True)
class PackedTerm:
    """One Hamiltonian term in frame coordinates."""

    x: np.ndarray  # [L] uint64
    z: np.ndarray
    coeff: float
    limbs: tuple[int, ...]  # limb indices the term touches
    k_self: int  # popcount(x & z), power of i folded into the term encoding


def pack_hamiltonian_terms(
    H: HamiltonianSpec, window: tuple[int, int], frame_start: int, n_limbs: int
) -> list[PackedTerm]:
    packed = []
    for string, coeff in hamiltonian_terms_in_window(H, window):
        shift = string.window_start - frame_start
        if shift < 0 or shift + string.window_length > n_limbs * _LIMB_BITS:
            raise ValueError("Hamiltonian term outside frame; enlarge the frame")
        tx = _int_to_limbs(string.x_bits << shift, n_limbs)
        tz = _int_to_limbs(string.z_bits << shift, n_limbs)
        touched = tuple(int(m) for m in np.flatnonzero(tx | tz))
        k_self = int(_popcount(tx & tz).sum())
        packed.append(PackedTerm(tx, tz, coeff, touched, k_self))
    return packed


def apply_liouvillian_packed(
    terms: list[PackedTerm],
    vec: PackedVector,
    tail: tuple[float, PackedVector] | None = None,
    flush_rows: int = 40_000_000,
) -> PackedVector:
    """B(vec) [+ alpha * tail], merged and canonically sorted.

    B is the real-convention Liouvillian: term tau (coefficient c_H)
    acting on string s with coefficient c contributes
    ``2 * c_H * c * sign(i-power)`` on tau*s whenever tau and s
    anticommute.  An even i-power raises ConventionError.

    ``flush_rows`` bounds the pending-row buffer; batches are merged
    eagerly so peak memory stays near ``flush_rows`` rows.  Flush points
    are a deterministic function of the input, so results are
    bit-reproducible.
    """
    n, L = vec.x.shape
    pend_x, pend_z, pend_c = [], [], []
    pending_rows = 0
    acc: PackedVector | None = None

    def flush(extra_x=None, extra_z=None, extra_c=None):
        nonlocal acc, pending_rows, pend_x, pend_z, pend_c
        xs = list(pend_x)
        zs = list(pend_z)
        cs = list(pend_c)
        if extra_x is not None:
            xs.append(extra_x)
            zs.append(extra_z)
            cs.append(extra_c)
        if acc is not None:
            xs.append(acc.x)
            zs.append(acc.z)
            cs.append(acc.c)
        if not xs:
            acc = PackedVector(
                vec.frame_start,
                np.zeros((0, L), dtype=np.uint64),
                np.zeros((0, L), dtype=np.uint64),
                np.zeros(0),
            )
        else:
            acc = _sort_reduce(
                PackedVector(
                    vec.frame_start,
                    np.concatenate(xs, axis=0),
                    np.concatenate(zs, axis=0),
                    np.concatenate(cs, axis=0),
                )
            )
        pend_x, pend_z, pend_c = [], [], []
        pending_rows = 0

    for t in terms:
        # symplectic parity over the term's limbs only
        par = np.zeros(n, dtype=np.int64)
        for m in t.limbs:
            par += _popcount(vec.x[:, m] & t.z[m])
            par += _popcount(vec.z[:, m] & t.x[m])
        idx = np.flatnonzero(par & 1)
        if idx.size == 0:
            continue
        nx = vec.x[idx].copy()
        nz = vec.z[idx].copy()
        # i-power of term*string: k_self + pc(x&z) - pc(x'&z') + 2*pc(t.z & x);
        # untouched limbs cancel between the old and new pc(x&z) terms.
        k = np.full(idx.size, t.k_self, dtype=np.int64)
        for m in t.limbs:
            k += _popcount(vec.x[idx, m] & vec.z[idx, m])
            k += 2 * _popcount(vec.x[idx, m] & t.z[m])
            nx[:, m] ^= t.x[m]
            nz[:, m] ^= t.z[m]
            k -= _popcount(nx[:, m] & nz[:, m])
        k &= 3
        if not bool(np.all(k & 1)):
            raise ConventionError("even i-power in Liouvillian application")
        sign = (1 - (k & 2)).astype(np.float64)  # k=1 -> +1, k=3 -> -1
        pend_x.append(nx)
        pend_z.append(nz)
        pend_c.append(2.0 * t.coeff * vec.c[idx] * sign)
        pending_rows += idx.size
        if pending_rows >= flush_rows:
            flush()

    if tail is not None:
        alpha, other = tail
        if other.frame_start != vec.frame_start or other.n_limbs != L:
            raise ValueError("tail vector must share the frame")
        flush(other.x, other.z, other.c * alpha)
    else:
        flush()
    return acc


def packed_inner(a: PackedVector, b: PackedVector) -> float:
    """Inner product of two packed vectors sharing a frame."""
    if a.frame_start != b.frame_start or a.n_limbs != b.n_limbs:
        raise ValueError("vectors must share the frame")
    na, L = a.x.shape
    x = np.concatenate([a.x, b.x], axis=0)
    z = np.concatenate([a.z, b.z], axis=0)
    c = np.concatenate([a.c, b.c])
    keys = tuple(z[:, m] for m in range(L)) + tuple(x[:, m] for m in range(L))
    order = np.lexsort(keys)
    xs, zs, cs = x[order], z[order], c[order]
    if len(cs) < 2:
        return 0.0
    same = np.ones(len(cs) - 1, dtype=bool)
    for m in range(L):
        same &= xs[1:, m] == xs[:-1, m]
        same &= zs[1:, m] == zs[:-1, m]
    # rows are unique within each input, so equal neighbors pair a with b
    prods = cs[:-1][same] * cs[1:][same]
    return float(np.add.reduce(prods))
