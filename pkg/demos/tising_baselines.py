"""Integrable baselines of the transverse-field chain at h = 1.

Four exact statements are checked directly from the engine:

* the longitudinal one-site operator has b_n = 2 sqrt(n) exactly
  (its autocorrelation is the Gaussian exp(-2 t^2));
* the transverse one-site operator's coefficients converge to a
  constant (algebraically decaying correlator);
* self-duality makes the transverse one-site and longitudinal two-site
  operators grow identically;
* evolving the chain with the measured transverse coefficients
  reconstructs the known correlator J0(4t)^2 + J1(4t)^2.

Run:  python demos/tising_baselines.py
"""

import numpy as np

from opgrowth import (
    HamiltonianSpec,
    ObservableSpec,
    autocorrelation,
    brandt_jacoby_Cx,
    evolve,
    gaussian_Cz,
    run_lanczos,
)

H = HamiltonianSpec.from_config(h=1.0)

# ---- longitudinal one-site operator: exact sqrt law ------------------------

seq_z = run_lanczos(H, ObservableSpec("z"), n_max=30)
b = np.array(seq_z.b)
n = np.arange(31)
print("longitudinal one-site operator:")
print(f"  max |b_n - 2 sqrt(n)| = {np.max(np.abs(b - 2 * np.sqrt(n))):.2e}")
print(f"  strings per step: {seq_z.meta.term_counts[:6]} ... {seq_z.meta.term_counts[-1]}")

t = np.linspace(0.0, 2.0, 21)
state = evolve(seq_z, t, N_trunc=30)
dev = np.max(np.abs(autocorrelation(state) - [gaussian_Cz(tt) for tt in t]))
print(f"  reconstructed C(t) vs exp(-2 t^2): {dev:.2e}")

# ---- transverse one-site operator: bounded coefficients --------------------

seq_x = run_lanczos(H, ObservableSpec("x"), n_max=58)
b = np.array(seq_x.b)
print("\ntransverse one-site operator:")
print(f"  b_n tail (n = 50..58): {np.array2string(b[50:], precision=4)}")
print(f"  tail slope over [48, 58]: {np.polyfit(np.arange(48, 59), b[48:], 1)[0]:+.2e}")
print(f"  strings at n = 58: {seq_x.meta.term_counts[-1]} (quadratic, not exponential)")

t = np.linspace(0.0, 3.0, 31)
state = evolve(seq_x, t, N_trunc=58)
dev = np.max(np.abs(autocorrelation(state) - [brandt_jacoby_Cx(tt) for tt in t]))
print(f"  reconstructed C(t) vs J0(4t)^2 + J1(4t)^2: {dev:.2e}")

# ---- self-duality -----------------------------------------------------------

seq_zz = run_lanczos(H, ObservableSpec("zz"), n_max=30)
seq_x30 = run_lanczos(H, ObservableSpec("x"), n_max=30)
dev = max(abs(a - c) for a, c in zip(seq_x30.b, seq_zz.b))
print(f"\nself-duality: transverse 1-site vs longitudinal 2-site, max dev = {dev:.2e}")
