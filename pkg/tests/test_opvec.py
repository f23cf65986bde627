"""Operator-space vectors: inner product, norm, axpy, prune, serialization."""

import numpy as np

from opgrowth.opvec import OperatorVector, axpy, inner_product, norm, prune
from opgrowth.pauli import PauliString

X0 = PauliString.from_label("X@0")
Z0 = PauliString.from_label("Z@0")
Y0 = PauliString.from_label("Y@0")
ZZ = PauliString.from_label("Z@0 Z@1")


def test_inner_product_examples():
    vz = OperatorVector({Z0: 1.0})
    assert inner_product(vz, vz) == 1.0
    assert inner_product(vz, OperatorVector({X0: 1.0})) == 0.0
    v = OperatorVector({X0: 0.6, ZZ: 0.8})
    assert inner_product(v, OperatorVector({ZZ: 1.0})) == 0.8


def test_norm_examples():
    assert norm(OperatorVector({Y0: 2.0})) == 2.0
    assert norm(OperatorVector({X0: 1.0, PauliString.from_label("X@1"): 1.0})) == np.sqrt(2.0)
    assert norm(OperatorVector()) == 0.0


def test_axpy_examples():
    vz = OperatorVector({Z0: 1.0})
    assert len(axpy(-1.0, vz, vz)) == 0  # exact cancellation prunes
    r = axpy(2.0, OperatorVector({X0: 1.0}), vz)
    assert r.coefficient(X0) == 2.0 and r.coefficient(Z0) == 1.0
    r = axpy(0.5, OperatorVector({Y0: 1.0}), OperatorVector({Y0: 0.5}))
    assert r == OperatorVector({Y0: 1.0})


def test_prune_examples():
    v = OperatorVector({X0: 1e-20, Z0: 1.0})
    pruned, dropped = prune(v, 1e-12)
    assert pruned == OperatorVector({Z0: 1.0}) and dropped == 1e-20

    v = OperatorVector({X0: 0.3, PauliString.from_label("X@1"): 0.4})
    pruned, dropped = prune(v, 0.35)
    assert len(pruned) == 1 and pruned.coefficient(PauliString.from_label("X@1")) == 0.4
    assert dropped == 0.3

    same, dropped = prune(v, 0.0)
    assert same == v and dropped == 0.0


def _random_vector(rng, n_terms=12):
    terms = {}
    for _ in range(n_terms):
        site = int(rng.integers(-5, 5))
        letter = "XYZ"[rng.integers(0, 3)]
        terms[PauliString.from_ops({site: letter, site + 1: "XYZ"[rng.integers(0, 3)]})] = float(
            rng.normal()
        )
    return OperatorVector(terms)


def test_cauchy_schwarz_random():
    rng = np.random.default_rng(7)
    for _ in range(500):
        a, b = _random_vector(rng), _random_vector(rng)
        lhs = inner_product(a, b) ** 2
        rhs = inner_product(a, a) * inner_product(b, b)
        assert lhs <= rhs * (1.0 + 1e-12)


def test_projection_reduces_norm():
    rng = np.random.default_rng(8)
    for _ in range(200):
        a, b = _random_vector(rng), _random_vector(rng)
        nb = norm(b)
        if nb == 0.0:
            continue
        b_unit = axpy(1.0 / nb - 1.0, b, b)  # b / nb
        proj = inner_product(a, b_unit)
        residual = axpy(-proj, b_unit, a)
        assert norm(residual) <= norm(a) * (1.0 + 1e-12)


def test_norm_is_bit_reproducible():
    rng = np.random.default_rng(9)
    v = _random_vector(rng, 200)
    values = {norm(v) for _ in range(20)}
    assert len(values) == 1


def test_serialization_round_trip():
    rng = np.random.default_rng(10)
    v = _random_vector(rng, 30)
    lines = v.to_lines()
    assert lines == sorted(lines, key=lambda s: PauliString.from_label(s.split("\t")[1]).sort_key())
    back = OperatorVector.from_lines(lines)
    assert back == v
