"""Shared fixtures; the expensive Lanczos runs are computed once per session."""

import pytest

from opgrowth.lanczos import run_lanczos
from opgrowth.model import HamiltonianSpec, ObservableSpec


@pytest.fixture(scope="session")
def tising():
    return HamiltonianSpec.from_config(h=1.0)


@pytest.fixture(scope="session")
def seq_tising_z_25(tising):
    return run_lanczos(tising, ObservableSpec("z"), n_max=25)


@pytest.fixture(scope="session")
def seq_tising_x_44(tising):
    return run_lanczos(tising, ObservableSpec("x"), n_max=44)


@pytest.fixture(scope="session")
def seq_tlising_g1_x_26():
    H = HamiltonianSpec.from_config(h=1.0, g=1.0, g_profile="uniform")
    return run_lanczos(H, ObservableSpec("x"), n_max=26)


@pytest.fixture(scope="session")
def collapse_runs_20(tising):
    ref = run_lanczos(tising, ObservableSpec("x"), n_max=20)
    runs = []
    for g in (1e-3, 1e-2, 1e-1):
        H = HamiltonianSpec.from_config(h=1.0, g=g, g_profile="uniform")
        runs.append((g, run_lanczos(H, ObservableSpec("x"), n_max=20)))
    return ref, runs


@pytest.fixture(scope="session")
def seq_site0_g01_x_32():
    H = HamiltonianSpec.from_config(h=1.0, g=0.1, g_profile="site0")
    return run_lanczos(H, ObservableSpec("x"), n_max=32)
