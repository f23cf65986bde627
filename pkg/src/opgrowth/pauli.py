"""Exact algebra of Pauli strings on an unbounded 1D lattice.

A Pauli string is a tensor product of single-site operators
``I, X, Y, Z`` with at most finitely many non-identity sites.  Each
string is stored as a pair of bit-vectors (Python integers) over a
site window: bit ``l`` of ``x_bits`` / ``z_bits`` refers to lattice
site ``window_start + l``.  Per site,

    (x, z) = (0, 0) -> I,  (1, 0) -> X,  (0, 1) -> Z,  (1, 1) -> Y,

with the convention ``Y = i X Z`` absorbed into the encoding, so that
the operator encoded by bits (x, z) is ``i**(x & z) X**x Z**z`` site by
site.  Products and commutators track the overall power of ``i``
exactly as an integer mod 4; no floating-point phases appear anywhere.

Strings are kept canonical: the first and last window sites are
non-identity, or the string is the global identity with an empty
window.  Equality and hashing rely on this normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

_LETTER_FOR_BITS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS_FOR_LETTER = {v: k for k, v in _LETTER_FOR_BITS.items()}


@dataclass(frozen=True)
class PauliString:
    """One basis operator, binary-symplectic encoded with a site window."""

    window_start: int = 0
    x_bits: int = 0
    z_bits: int = 0

    def __post_init__(self):
        occ = self.x_bits | self.z_bits
        if occ == 0:
            # Global identity: empty window anchored at 0.
            object.__setattr__(self, "window_start", 0)
            return
        if self.x_bits < 0 or self.z_bits < 0:
            raise ValueError("bit-vectors must be non-negative integers")
        shift = (occ & -occ).bit_length() - 1  # index of lowest non-identity site
        if shift:
            object.__setattr__(self, "window_start", self.window_start + shift)
            object.__setattr__(self, "x_bits", self.x_bits >> shift)
            object.__setattr__(self, "z_bits", self.z_bits >> shift)

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    @property
    def window_length(self) -> int:
        return (self.x_bits | self.z_bits).bit_length()

    @property
    def window_end(self) -> int:
        """One past the last non-identity site (== window_start for identity)."""
        return self.window_start + self.window_length

    def sites(self) -> list[int]:
        """Non-identity sites, ascending."""
        occ = self.x_bits | self.z_bits
        return [self.window_start + l for l in range(occ.bit_length()) if (occ >> l) & 1]

    def letter_at(self, site: int) -> str:
        l = site - self.window_start
        if l < 0 or self.is_identity:
            return "I"
        return _LETTER_FOR_BITS[((self.x_bits >> l) & 1, (self.z_bits >> l) & 1)]

    def sort_key(self) -> tuple:
        return (self.window_start, self.window_length, self.x_bits, self.z_bits)

    @classmethod
    def from_ops(cls, ops: dict[int, str] | Iterable[tuple[int, str]]) -> "PauliString":
        """Build from ``{site: letter}`` pairs; 'I' entries are allowed and dropped."""
        pairs = list(ops.items()) if isinstance(ops, dict) else list(ops)
        pairs = [(s, p.upper()) for s, p in pairs if p.upper() != "I"]
        if not pairs:
            return cls()
        start = min(s for s, _ in pairs)
        x = z = 0
        for site, letter in pairs:
            xb, zb = _BITS_FOR_LETTER[letter]
            l = site - start
            if ((x | z) >> l) & 1:
                raise ValueError(f"duplicate site {site}")
            x |= xb << l
            z |= zb << l
        return cls(start, x, z)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse the debug form, e.g. ``"X@0 Z@2"``; ``"I"`` is the identity."""
        label = label.strip()
        if label in ("", "I"):
            return cls()
        pairs = []
        for token in label.split():
            letter, _, site = token.partition("@")
            pairs.append((int(site), letter))
        return cls.from_ops(pairs)

    def label(self) -> str:
        """Human-readable form: site-annotated letters, sites ascending."""
        if self.is_identity:
            return "I"
        return " ".join(f"{self.letter_at(s)}@{s}" for s in self.sites())

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class PhasedString:
    """A Pauli string together with an exact phase ``i**phase_exponent``."""

    string: PauliString
    phase_exponent: int

    def __post_init__(self):
        object.__setattr__(self, "phase_exponent", self.phase_exponent % 4)


def _aligned_bits(a: PauliString, b: PauliString) -> tuple[int, int, int, int, int]:
    """Shift both strings into the common window; empty windows align trivially."""
    if a.is_identity:
        return b.window_start, 0, 0, b.x_bits, b.z_bits
    if b.is_identity:
        return a.window_start, a.x_bits, a.z_bits, 0, 0
    start = min(a.window_start, b.window_start)
    sa, sb = a.window_start - start, b.window_start - start
    return start, a.x_bits << sa, a.z_bits << sa, b.x_bits << sb, b.z_bits << sb


def multiply(a: PauliString, b: PauliString) -> PhasedString:
    """Exact product: ``a * b == i**k * result`` with ``k`` returned mod 4.

    Site by site, with the Y = iXZ convention folded into the encoding,
    the power of i picked up is
    ``popcount(xa & za) + popcount(xb & zb) - popcount(xc & zc) + 2*popcount(za & xb)``
    for the product bits ``xc = xa ^ xb``, ``zc = za ^ zb``.
    """
    start, xa, za, xb, zb = _aligned_bits(a, b)
    xc, zc = xa ^ xb, za ^ zb
    k = (
        (xa & za).bit_count()
        + (xb & zb).bit_count()
        - (xc & zc).bit_count()
        + 2 * (za & xb).bit_count()
    )
    return PhasedString(PauliString(start, xc, zc), k % 4)


def commutation_parity(a: PauliString, b: PauliString) -> int:
    """Symplectic form of the bit-vectors: 0 = commute, 1 = anticommute.

    Equals (mod 2) the number of sites where both strings are
    non-identity and differ.
    """
    _, xa, za, xb, zb = _aligned_bits(a, b)
    return ((xa & zb).bit_count() + (za & xb).bit_count()) & 1


def commutator(a: PauliString, b: PauliString) -> Optional[PhasedString]:
    """``[a, b]`` as ``2 * i**k * string``, or None when a and b commute.

    The returned PhasedString is the product ``a*b``; the scalar factor
    2 is implicit (two anticommuting strings satisfy [a,b] = 2ab).
    """
    if commutation_parity(a, b) == 0:
        return None
    return multiply(a, b)


IDENTITY = PauliString()
