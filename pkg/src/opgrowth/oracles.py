"""Independent ground truths used to validate the growth engine.

Contents:

* the three exactly solvable growth profiles (constant, sqrt-n, linear
  Lanczos coefficients) with their closed-form amplitudes,
  autocorrelation functions and mean depths;
* Bessel functions of the first kind via Miller's backward recurrence
  (kept in-repo so the oracle is self-contained);
* the Lambert W function (principal branch, Halley iteration);
* the two transverse-Ising (h=1) reference correlators
  ``C_x = J0(4t)^2 + J1(4t)^2`` and ``C_z = exp(-2 t^2)``;
* a brute-force dense Lanczos oracle on small periodic chains, built
  from explicit 2^L x 2^L matrices and matrix commutators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli import PauliString

# ---------------------------------------------------------------------------
# Bessel J_n by Miller's backward recurrence
# ---------------------------------------------------------------------------


def bessel_jn(x: float, k_max: int) -> np.ndarray:
    """J_0(x) .. J_kmax(x) for x >= 0.

    Backward recurrence from a zero/one seed well beyond the turning
    point, normalized with the identity J_0 + 2*sum_{k>=1} J_{2k} = 1.
    Accurate to ~1e-14 relative for the dominant orders; tiny orders far
    beyond the turning point come out with correct magnitude.
    """
    if x < 0:
        raise ValueError("x must be >= 0")
    if x == 0.0:
        out = np.zeros(k_max + 1)
        out[0] = 1.0
        return out
    # Start far enough beyond max(k_max, x) that seed contamination decays
    # below double precision before reaching the requested orders.
    margin = max(40, int(16 * x ** (1.0 / 3.0)))
    k_start = max(k_max, int(math.ceil(x))) + margin
    out = np.zeros(k_max + 1)
    jp, j = 0.0, 1.0  # J_{k+1}, J_k seeds (arbitrary scale)
    alt_sum = 0.0  # accumulates J_0 + 2*J_2 + 2*J_4 + ...
    for k in range(k_start, -1, -1):
        jm = (2.0 * (k + 1) / x) * j - jp
        jp, j = j, jm
        # j now holds the unnormalized J_k
        if k % 2 == 0:
            alt_sum += j if k == 0 else 2.0 * j
        if k <= k_max:
            out[k] = j
        if abs(j) > 1e250:  # rescale to avoid overflow on long recurrences
            j *= 1e-250
            jp *= 1e-250
            alt_sum *= 1e-250
            out *= 1e-250
    return out / alt_sum


def bessel_j0(x: float) -> float:
    return float(bessel_jn(abs(x), 0)[0])


def bessel_j1(x: float) -> float:
    if x == 0.0:
        return 0.0
    return float(math.copysign(1.0, x) * bessel_jn(abs(x), 1)[1])


# ---------------------------------------------------------------------------
# Solvable growth profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolvableType:
    """One of the three solvable Lanczos-coefficient profiles.

    kind      b_n                  C(t)                (n)_t
    type_I    alpha                J1(2at)/(at)        ~ 16/(3 pi) a t
    type_II   alpha*sqrt(n)        exp(-a^2 t^2/2)     (a t)^2
    type_III  alpha*sqrt(n(n-1+eta))  sech(at)^eta     eta*sinh(at)^2
    """

    kind: str
    alpha: float
    eta: float | None = None

    def __post_init__(self):
        if self.kind not in ("type_I", "type_II", "type_III"):
            raise ValueError(f"unknown solvable type {self.kind!r}")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.kind == "type_III" and (self.eta is None or self.eta <= 0):
            raise ValueError("type_III requires eta > 0")


def closed_form_b(s: SolvableType, n: int) -> float:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 0.0
    if s.kind == "type_I":
        return s.alpha
    if s.kind == "type_II":
        return s.alpha * math.sqrt(n)
    return s.alpha * math.sqrt(n * (n - 1 + s.eta))


def closed_form_phi(s: SolvableType, n: int, t: float) -> float:
    """Amplitude on Krylov site n at time t, evaluated in log space where
    factorials would overflow."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0.0:
        return 1.0 if n == 0 else 0.0
    at = s.alpha * t
    if s.kind == "type_I":
        return (n + 1) * bessel_jn(2.0 * at, n + 1)[n + 1] / at
    if s.kind == "type_II":
        log_mag = n * math.log(at) - 0.5 * math.lgamma(n + 1) - 0.5 * at * at
        return math.exp(log_mag) if log_mag > -700 else 0.0
    eta = s.eta
    log_poch = math.lgamma(eta + n) - math.lgamma(eta) - math.lgamma(n + 1)
    log_mag = 0.5 * log_poch + n * math.log(math.tanh(at)) - eta * math.log(math.cosh(at))
    return math.exp(log_mag) if log_mag > -700 else 0.0


def closed_form_C(s: SolvableType, t: float) -> float:
    if t == 0.0:
        return 1.0
    at = s.alpha * t
    if s.kind == "type_I":
        return bessel_j1(2.0 * at) / at
    if s.kind == "type_II":
        return math.exp(-0.5 * at * at)
    return math.cosh(at) ** (-s.eta)


TYPE_I_DEPTH_SLOPE = 16.0 / (3.0 * math.pi)  # late-time (n)_t / (alpha t) for type I


def closed_form_depth(s: SolvableType, t: float) -> float:
    """Mean Krylov depth sum_n n phi_n(t)^2.

    Exact for types II and III; for type I the series is summed
    numerically (its late-time asymptote is TYPE_I_DEPTH_SLOPE * alpha*t).
    """
    at = s.alpha * t
    if s.kind == "type_II":
        return at * at
    if s.kind == "type_III":
        return s.eta * math.sinh(at) ** 2
    if t == 0.0:
        return 0.0
    n_sum = int(4 * at + 60)
    j = bessel_jn(2.0 * at, n_sum + 1)
    n = np.arange(n_sum + 1)
    phi = (n + 1) * j[1:] / at
    return float(np.sum(n * phi * phi))


# ---------------------------------------------------------------------------
# t-Ising (h=1) reference correlators
# ---------------------------------------------------------------------------


def brandt_jacoby_Cx(t: float) -> float:
    """Autocorrelation of the transverse one-site operator at h=1, g=0."""
    return bessel_j0(4.0 * t) ** 2 + bessel_j1(4.0 * t) ** 2


def gaussian_Cz(t: float) -> float:
    """Autocorrelation of the longitudinal one-site operator at h=1, g=0."""
    return math.exp(-2.0 * t * t)


# ---------------------------------------------------------------------------
# Lambert W (principal branch)
# ---------------------------------------------------------------------------


def lambert_w(x: float) -> float:
    """Principal-branch W(x) for x >= 0: the solution of w*e^w = x.

    Halley iteration from a log-based initial guess; converges to full
    double precision (relative round-trip residual ~ machine epsilon).
    """
    if x < 0:
        raise ValueError("principal branch implemented for x >= 0 only")
    if x == 0.0:
        return 0.0
    if x > math.e:
        lx = math.log(x)
        w = lx - math.log(lx)
    else:
        w = x / (1.0 + x) * (1.0 + math.log(1.0 + x)) / (1.0 + math.log(1.0 + x) / (1.0 + x))
        if not math.isfinite(w) or w <= 0:
            w = math.log(1.0 + x)
    for _ in range(60):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0:
            break
        wp1 = w + 1.0
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= 1e-16 * max(1.0, abs(w)):
            break
    return w


# ---------------------------------------------------------------------------
# Dense matrices and the small-chain Lanczos oracle
# ---------------------------------------------------------------------------

_PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def string_matrix(string: PauliString, sites: list[int]) -> np.ndarray:
    """Dense matrix of a Pauli string on an explicit ordered site list.

    Sites of the string outside `sites` must be identity; raises otherwise.
    """
    for s in string.sites():
        if s not in sites:
            raise ValueError(f"string acts on site {s} outside {sites}")
    m = np.array([[1.0 + 0j]])
    for s in sites:
        m = np.kron(m, _PAULI_MATS[string.letter_at(s)])
    return m


def string_matrix_on_ring(string: PauliString, L: int) -> np.ndarray:
    """Dense matrix of a string wrapped onto a periodic chain of L sites.

    Distinct lattice sites must stay distinct mod L.
    """
    occupied = string.sites()
    ring_sites = [s % L for s in occupied]
    if len(set(ring_sites)) != len(ring_sites):
        raise ValueError("string support wraps onto itself on this ring")
    letters = {s % L: string.letter_at(s) for s in occupied}
    m = np.array([[1.0 + 0j]])
    for s in range(L):
        m = np.kron(m, _PAULI_MATS[letters.get(s, "I")])
    return m


def ring_hamiltonian(L: int, h: float, g: float = 0.0, g_profile: str = "none") -> np.ndarray:
    """H = sum_l [Z_l Z_{l+1} + h X_l + g_l Z_l] on a periodic L-site chain."""
    dim = 2**L
    H = np.zeros((dim, dim), dtype=complex)
    for l in range(L):
        H += string_matrix_on_ring(PauliString.from_ops({l: "Z", (l + 1) % L: "Z"}), L)
        H += h * string_matrix_on_ring(PauliString.from_ops({l: "X"}), L)
        if g_profile == "uniform":
            H += g * string_matrix_on_ring(PauliString.from_ops({l: "Z"}), L)
        elif g_profile == "site0" and l == 0:
            H += g * string_matrix_on_ring(PauliString.from_ops({0: "Z"}), L)
        elif g_profile not in ("none", "uniform", "site0"):
            raise ValueError(f"unknown g_profile {g_profile!r}")
    return H


def observable_matrix(kind: str, L: int) -> np.ndarray:
    """sigma_0^a or sigma_0^a sigma_1^a on the L-site ring ("identity" is
    accepted for exhaustion tests)."""
    if kind == "identity":
        return np.eye(2**L, dtype=complex)
    if kind in ("x", "y", "z"):
        return string_matrix_on_ring(PauliString.from_ops({0: kind.upper()}), L)
    if kind in ("xx", "yy", "zz"):
        a = kind[0].upper()
        return string_matrix_on_ring(PauliString.from_ops({0: a, 1: a}), L)
    raise ValueError(f"unknown observable {kind!r}")


def _mat_inner(A: np.ndarray, B: np.ndarray) -> complex:
    return np.trace(A.conj().T @ B) / A.shape[0]


def dense_lanczos_oracle(
    h: float,
    g: float,
    g_profile: str,
    observable: str,
    L: int,
    n_max: int,
    exhaustion_tol: float = 1e-9,
) -> list[float]:
    """Lanczos coefficients from explicit matrix commutators on a periodic
    chain of L <= 5 sites (the full 4^L operator space, realized as dense
    2^L x 2^L matrices with the trace inner product).

    Returns [b_0=0, b_1, ..]; stops early when the Krylov space is
    exhausted (norm below exhaustion_tol).
    """
    if L > 5:
        raise ValueError("dense oracle capped at L = 5 sites")
    H = ring_hamiltonian(L, h, g, g_profile)
    O_prev = observable_matrix(observable, L)
    O_prev = O_prev / math.sqrt(_mat_inner(O_prev, O_prev).real)
    O_prevprev = None
    b = [0.0]
    for n in range(1, n_max + 1):
        A = H @ O_prev - O_prev @ H
        if O_prevprev is not None:
            A = A - b[n - 1] * O_prevprev
        bn = math.sqrt(max(_mat_inner(A, A).real, 0.0))
        if bn < exhaustion_tol:
            break
        b.append(bn)
        O_prevprev, O_prev = O_prev, A / bn
    return b


def dense_krylov_overlaps(
    h: float, g: float, g_profile: str, observable: str, L: int, n_check: int
) -> np.ndarray:
    """Gram matrix (O_i|O_j) of the dense Krylov basis, for overlap checks."""
    H = ring_hamiltonian(L, h, g, g_profile)
    O = observable_matrix(observable, L)
    O = O / math.sqrt(_mat_inner(O, O).real)
    basis = [O]
    b_prev = 0.0
    for n in range(1, n_check + 1):
        A = H @ basis[-1] - basis[-1] @ H
        if len(basis) > 1:
            A = A - b_prev * basis[-2]
        bn = math.sqrt(max(_mat_inner(A, A).real, 0.0))
        if bn < 1e-12:
            break
        basis.append(A / bn)
        b_prev = bn
    G = np.empty((len(basis), len(basis)), dtype=complex)
    for i, Bi in enumerate(basis):
        for j, Bj in enumerate(basis):
            G[i, j] = _mat_inner(Bi, Bj)
    return G
