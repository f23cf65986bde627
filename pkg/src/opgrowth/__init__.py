"""Operator-growth dynamics for the transverse/longitudinal-field Ising chain.

Computes Lanczos coefficients of local operators on the infinite chain,
solves the induced tight-binding dynamics on the Krylov chain, and
analyzes the coefficient growth against straight-line scaling
hypotheses and the weak-field crossover collapse.
"""

__version__ = "0.1.0"

from .dynamics import KrylovState, autocorrelation, evolve, mean_depth
from .lanczos import LanczosSequence, krylov_basis_overlap_check, run_lanczos
from .model import HamiltonianSpec, ObservableSpec, apply_liouvillian, hamiltonian_terms_in_window
from .opvec import OperatorVector, axpy, inner_product, norm, prune
from .oracles import (
    SolvableType,
    brandt_jacoby_Cx,
    closed_form_b,
    closed_form_C,
    closed_form_depth,
    closed_form_phi,
    dense_lanczos_oracle,
    gaussian_Cz,
    lambert_w,
)
from .pauli import IDENTITY, PauliString, PhasedString, commutation_parity, commutator, multiply
from .scaling import CollapseReport, ScalingReport, collapse, fit_scaling

__all__ = [
    "__version__",
    "PauliString", "PhasedString", "IDENTITY",
    "multiply", "commutator", "commutation_parity",
    "OperatorVector", "inner_product", "norm", "axpy", "prune",
    "HamiltonianSpec", "ObservableSpec", "apply_liouvillian", "hamiltonian_terms_in_window",
    "LanczosSequence", "run_lanczos", "krylov_basis_overlap_check",
    "KrylovState", "evolve", "autocorrelation", "mean_depth",
    "SolvableType", "closed_form_b", "closed_form_phi", "closed_form_C", "closed_form_depth",
    "brandt_jacoby_Cx", "gaussian_Cz", "lambert_w", "dense_lanczos_oracle",
    "ScalingReport", "CollapseReport", "fit_scaling", "collapse",
]
