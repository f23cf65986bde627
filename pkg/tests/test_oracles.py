"""The oracles themselves, cross-checked against scipy/mpmath and identities."""

import math

import numpy as np
import pytest
import scipy.special as sps

from opgrowth.oracles import (
    SolvableType,
    TYPE_I_DEPTH_SLOPE,
    bessel_j0,
    bessel_j1,
    bessel_jn,
    brandt_jacoby_Cx,
    closed_form_b,
    closed_form_depth,
    closed_form_phi,
    dense_lanczos_oracle,
    gaussian_Cz,
    lambert_w,
    observable_matrix,
    ring_hamiltonian,
)


class TestBessel:
    @pytest.mark.parametrize("x", [0.1, 1.0, 4.0, 12.0, 60.0, 200.0, 3000.0])
    def test_against_scipy(self, x):
        k_max = int(x + 40)
        ours = bessel_jn(x, k_max)
        ref = sps.jv(np.arange(k_max + 1), x)
        assert np.max(np.abs(ours - ref)) < 1e-13

    def test_x_zero(self):
        out = bessel_jn(0.0, 5)
        assert out[0] == 1.0 and not out[1:].any()

    @pytest.mark.parametrize("x", [0.5, 3.0, 25.0, 400.0])
    def test_sum_of_squares_identity(self, x):
        # J_0^2 + 2 sum_{k>=1} J_k^2 = 1
        j = bessel_jn(x, int(x + 60))
        total = j[0] ** 2 + 2.0 * np.sum(j[1:] ** 2)
        assert total == pytest.approx(1.0, abs=1e-13)

    def test_j1_odd(self):
        assert bessel_j1(-2.0) == -bessel_j1(2.0)
        assert bessel_j1(0.0) == 0.0
        assert bessel_j0(0.0) == 1.0


class TestSolvableClosedForms:
    def test_b_examples(self):
        assert closed_form_b(SolvableType("type_III", 1.0, eta=1.0), 3) == pytest.approx(3.0)
        assert closed_form_b(SolvableType("type_II", 2.0), 4) == pytest.approx(4.0)
        assert closed_form_b(SolvableType("type_I", 1.3), 0) == 0.0

    def test_phi_examples(self):
        # type_II(alpha=1), n=2, t=1: (1/sqrt 2) e^{-1/2}
        val = closed_form_phi(SolvableType("type_II", 1.0), 2, 1.0)
        assert val == pytest.approx(math.exp(-0.5) / math.sqrt(2.0), rel=1e-12)
        assert closed_form_phi(SolvableType("type_I", 1.0), 0, 0.0) == 1.0

    @pytest.mark.parametrize("s,n_sum", [
        (SolvableType("type_I", 1.0), 80),
        (SolvableType("type_II", 1.5), 120),
        (SolvableType("type_III", 1.0, eta=2.0), 4000),
    ])
    def test_normalization(self, s, n_sum):
        for t in (0.3, 1.0, 2.0):
            total = sum(closed_form_phi(s, n, t) ** 2 for n in range(n_sum))
            assert total == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("s", [
        SolvableType("type_I", 1.0),
        SolvableType("type_II", 1.0),
        SolvableType("type_III", 1.0, eta=1.5),
    ])
    def test_phi_satisfies_chain_equation(self, s):
        # central finite difference in t matches b_n phi_{n-1} - b_{n+1} phi_{n+1}
        dt = 1e-5
        for n in (0, 1, 3, 7):
            for t in (0.4, 1.1):
                lhs = (closed_form_phi(s, n, t + dt) - closed_form_phi(s, n, t - dt)) / (2 * dt)
                phi_prev = closed_form_phi(s, n - 1, t) if n >= 1 else 0.0
                rhs = closed_form_b(s, n) * phi_prev - closed_form_b(s, n + 1) * closed_form_phi(
                    s, n + 1, t
                )
                assert lhs == pytest.approx(rhs, abs=5e-9, rel=1e-6)

    def test_type_I_depth_asymptote(self):
        s = SolvableType("type_I", 1.0)
        t = np.linspace(5.0, 10.0, 11)
        slope = np.polyfit(t, [closed_form_depth(s, tt) for tt in t], 1)[0]
        assert slope == pytest.approx(TYPE_I_DEPTH_SLOPE, rel=5e-3)


class TestReferenceCorrelators:
    def test_values_at_zero(self):
        assert brandt_jacoby_Cx(0.0) == pytest.approx(1.0)
        assert gaussian_Cz(0.0) == 1.0

    def test_cz_at_one(self):
        assert gaussian_Cz(1.0) == pytest.approx(math.exp(-2.0), rel=1e-15)

    def test_cx_large_t_asymptotics(self):
        for t in (8.0, 15.0, 25.0):
            asym = (1.0 / (2.0 * math.pi * t)) * (1.0 - math.cos(8.0 * t) / (8.0 * t))
            assert brandt_jacoby_Cx(t) == pytest.approx(asym, rel=2e-2)

    def test_cz_matches_evolved_sqrt_profile(self):
        # links the sqrt-n coefficient law to the Gaussian correlator
        from opgrowth.dynamics import autocorrelation, evolve

        b = [0.0] + [2.0 * math.sqrt(n) for n in range(1, 81)]
        t = np.linspace(0.0, 2.0, 21)
        st = evolve(b, t, N_trunc=80)
        ref = np.array([gaussian_Cz(tt) for tt in t])
        assert np.max(np.abs(autocorrelation(st) - ref)) < 1e-6


class TestLambertW:
    def test_fixed_points(self):
        assert lambert_w(0.0) == 0.0
        assert lambert_w(math.e) == pytest.approx(1.0, rel=1e-14)
        assert lambert_w(10.0) == pytest.approx(1.745528002740699, rel=1e-12)

    def test_round_trip_relative(self):
        xs = np.concatenate([[0.0], np.geomspace(1e-8, 1e6, 300)])
        for x in xs:
            w = lambert_w(float(x))
            assert abs(w * math.exp(w) - x) <= 1e-12 * max(1.0, x)

    def test_against_scipy(self):
        for x in np.geomspace(1e-6, 1e6, 50):
            assert lambert_w(float(x)) == pytest.approx(float(sps.lambertw(x).real), rel=1e-12)


class TestDenseOracle:
    def test_hand_values_L4(self):
        b = dense_lanczos_oracle(1.0, 0.0, "none", "z", L=4, n_max=2)
        assert b[1] == pytest.approx(2.0, abs=1e-12)
        assert b[2] == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-12)

    def test_identity_observable_exhausts(self):
        b = dense_lanczos_oracle(1.0, 0.0, "none", "identity", L=4, n_max=3)
        assert b == [0.0]

    def test_dimension_cap(self):
        with pytest.raises(ValueError):
            dense_lanczos_oracle(1.0, 0.0, "none", "z", L=6, n_max=2)

    def test_hamiltonian_is_hermitian(self):
        H = ring_hamiltonian(4, 1.0, 0.7, "uniform")
        assert np.max(np.abs(H - H.conj().T)) == 0.0

    def test_observables_normalized(self):
        for kind in ("x", "y", "z", "xx", "zz"):
            m = observable_matrix(kind, 4)
            assert np.trace(m.conj().T @ m).real / 2**4 == pytest.approx(1.0)
