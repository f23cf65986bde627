"""Ising-chain Hamiltonians and Liouvillian application.

The Hamiltonian family is ``H = sum_l [ Z_l Z_{l+1} + h X_l + g_l Z_l ]``
on the infinite lattice, with the overall coupling fixed at 1 (energies
and times are measured in its units).  The longitudinal field profile is
uniform, single-site, or absent.

The Hamiltonian is never materialized globally: terms are generated per
support window, and ``apply_liouvillian`` visits only the terms that can
fail to commute with each string.

Sign/phase convention: for a real Pauli-basis vector A, the commutator
[H, A] equals i*B with B again real in the Pauli basis (every surviving
product carries an odd power of i).  ``apply_liouvillian`` returns B,
absorbing exactly one factor of i per application; Lanczos coefficients
are norms and are insensitive to that global phase.
"""

from __future__ import annotations

from dataclasses import dataclass

from .opvec import OperatorVector
from .pauli import PauliString, commutation_parity, multiply


class ConventionError(RuntimeError):
    """A commutator term carried an even power of i (Hermiticity bug)."""


@dataclass(frozen=True)
class HamiltonianSpec:
    """Transverse field h plus an optional longitudinal field profile."""

    transverse_h: float
    longitudinal_g: float = 0.0
    g_profile: str = "none"  # "uniform" | "site0" | "none"

    def __post_init__(self):
        if self.g_profile not in ("uniform", "site0", "none"):
            raise ValueError(f"unknown g_profile {self.g_profile!r}")
        if self.g_profile == "none" and self.longitudinal_g != 0.0:
            raise ValueError("g_profile 'none' requires g = 0")

    def g_at(self, site: int) -> float:
        if self.g_profile == "uniform":
            return self.longitudinal_g
        if self.g_profile == "site0" and site == 0:
            return self.longitudinal_g
        return 0.0

    @classmethod
    def from_config(cls, h: float, g: float = 0.0, g_profile: str | None = None) -> "HamiltonianSpec":
        if g_profile is None:
            g_profile = "uniform" if g != 0.0 else "none"
        if g == 0.0 and g_profile != "none":
            g_profile = "none"
        return cls(float(h), float(g), g_profile)


@dataclass(frozen=True)
class ObservableSpec:
    """Initial operator: sigma_0^a (one-body) or sigma_0^a sigma_1^a (two-body)."""

    kind: str  # "x" | "y" | "z" | "xx" | "yy" | "zz"

    def __post_init__(self):
        if self.kind not in ("x", "y", "z", "xx", "yy", "zz"):
            raise ValueError(f"unknown observable {self.kind!r}")

    def string(self) -> PauliString:
        a = self.kind[0].upper()
        if len(self.kind) == 1:
            return PauliString.from_ops({0: a})
        return PauliString.from_ops({0: a, 1: a})

    def vector(self) -> OperatorVector:
        return OperatorVector({self.string(): 1.0})


def hamiltonian_terms_in_window(
    H: HamiltonianSpec, window: tuple[int, int]
) -> list[tuple[PauliString, float]]:
    """All Hamiltonian terms whose support intersects [lo, hi], in a fixed
    deterministic order (bonds left to right, then transverse fields, then
    longitudinal fields)."""
    lo, hi = window
    if hi < lo:
        raise ValueError("window must be nonempty")
    terms: list[tuple[PauliString, float]] = []
    for l in range(lo - 1, hi + 1):
        terms.append((PauliString.from_ops({l: "Z", l + 1: "Z"}), 1.0))
    if H.transverse_h != 0.0:
        for l in range(lo, hi + 1):
            terms.append((PauliString.from_ops({l: "X"}), H.transverse_h))
    for l in range(lo, hi + 1):
        g = H.g_at(l)
        if g != 0.0:
            terms.append((PauliString.from_ops({l: "Z"}), g))
    return terms


def apply_liouvillian(H: HamiltonianSpec, v: OperatorVector) -> OperatorVector:
    """B with [H, v] = i*B, for a real Pauli-basis vector v.

    Per string, visits only Hamiltonian terms overlapping its support
    (grown by one bond); each anticommuting term tau with coefficient c_H
    contributes ``2 * c_H * coeff * sign`` on the product string, where
    sign = +1 for a phase i and -1 for a phase -i (even phases indicate a
    Hermiticity violation and raise).
    """
    out: dict[PauliString, float] = {}
    for string, coeff in v.items():
        if string.is_identity:
            continue  # identity commutes with everything
        window = (string.window_start, string.window_end - 1)
        for term, c_h in hamiltonian_terms_in_window(H, window):
            if commutation_parity(term, string) == 0:
                continue
            prod = multiply(term, string)
            k = prod.phase_exponent
            if k % 2 == 0:
                raise ConventionError(
                    f"even phase i^{k} for [{term}, {string}]; real convention violated"
                )
            contrib = 2.0 * c_h * coeff * (1.0 if k == 1 else -1.0)
            acc = out.get(prod.string, 0.0) + contrib
            if acc == 0.0:
                out.pop(prod.string, None)
            else:
                out[prod.string] = acc
    return OperatorVector(out)
