"""Dev sanity checks: pauli application vs dense kron, trotter vs expm, PSR identity."""
import numpy as np
from scipy.linalg import expm

from hebm.pauli import PauliString, ParametricHamiltonian, build_parent_ansatz, build_bas_ansatz, parse_pauli_string
from hebm.statevector import (
    BitOrder, StateVector, apply_pauli, rotate_amplitudes, prepare_basis_state,
    prepare_equal_state, trotter_propagate, TrotterConfig, basis_index_from_bits,
)

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
MATS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def dense_pauli(axes, bit_order):
    """Dense matrix via kron. MSB-first: qubit 0 is the leftmost kron factor."""
    order = range(len(axes)) if bit_order is BitOrder.MSB_FIRST else reversed(range(len(axes)))
    m = np.array([[1.0]], dtype=complex)
    for q in order:
        m = np.kron(m, MATS[axes[q]])
    return m


def dense_h(h, bit_order):
    m = np.zeros((2 ** h.n_qubits,) * 2, dtype=complex)
    for c, p in h.terms():
        m += c * dense_pauli(p.axes, bit_order)
    return m


rng = np.random.default_rng(7)

# 1. pauli application vs dense
for trial in range(50):
    n = rng.integers(1, 5)
    axes = "".join(rng.choice(list("IXYZ"), n))
    bo = BitOrder.MSB_FIRST if rng.random() < 0.5 else BitOrder.LSB_FIRST
    psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    got = apply_pauli(psi, PauliString(axes), bo)
    want = dense_pauli(axes, bo) @ psi
    assert np.allclose(got, want, atol=1e-12), (axes, bo)
print("pauli application OK")

# 2. rotation vs dense expm
for trial in range(20):
    n = rng.integers(1, 4)
    axes = "".join(rng.choice(list("IXYZ"), n))
    angle = rng.normal()
    bo = BitOrder.MSB_FIRST
    psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    got = rotate_amplitudes(psi, PauliString(axes), angle, bo)
    want = expm(-1j * angle * dense_pauli(axes, bo)) @ psi
    assert np.allclose(got, want, atol=1e-10), (axes, angle)
print("rotation OK")

# 3. trotter convergence to dense expm(-i H t/2)
h = build_parent_ansatz(4)
h.set_coefficients(rng.uniform(-1, 1, h.n_terms))
psi0 = prepare_equal_state(4)
Hd = dense_h(h, BitOrder.MSB_FIRST)
t = np.pi / 2
exact = expm(-1j * Hd * t / 2) @ psi0.amplitudes
for n_dt, order in [(1, 1), (10, 1), (100, 1), (1, 2), (10, 2), (100, 2), (1000, 2)]:
    out = trotter_propagate(psi0, h, TrotterConfig(n_dt=n_dt, order=order))
    err = np.linalg.norm(out.amplitudes - exact)
    print(f"  n_dt={n_dt:5d} order={order}  |err|={err:.3e}")

# 4. PSR identity check: d x_b / d theta_j = sum_occ scale*(x(+pi/4) - x(-pi/4))
from hebm.statevector import trotter_step_schedule
cfg = TrotterConfig(n_dt=3, order=2)
theta = rng.uniform(-1, 1, h.n_terms)
h.set_coefficients(theta)
step = trotter_step_schedule(h.n_terms, cfg)
n_occ = len(step) * cfg.n_dt

def probs_of(theta_vec, shift=None):
    hh = h.copy()
    hh.set_coefficients(theta_vec)
    return trotter_propagate(psi0, hh, cfg, occurrence_shift=shift).probabilities()

jfix = 5
# finite difference
eps = 1e-6
ep = np.array(theta); ep[jfix] += eps
em = np.array(theta); em[jfix] -= eps
fd = (probs_of(ep) - probs_of(em)) / (2 * eps)
# PSR
psr = np.zeros_like(fd)
full = [(j, s) for _ in range(cfg.n_dt) for (j, s) in step]
for occ, (j, scale) in enumerate(full):
    if j != jfix:
        continue
    xp = probs_of(theta, shift=(occ, np.pi / 4))
    xm = probs_of(theta, shift=(occ, -np.pi / 4))
    psr += scale * (xp - xm)
print("PSR vs FD max diff:", np.max(np.abs(psr - fd)))

# 5. scipy StopIteration in callback
from scipy.optimize import minimize as sp_min
calls = []
def cb(xk):
    calls.append(np.array(xk))
    if len(calls) >= 3:
        raise StopIteration
res = sp_min(lambda v: float(np.sum((v - 1) ** 2)), np.zeros(5), method="L-BFGS-B", callback=cb)
print("scipy stop-early: nit =", res.nit, "status =", res.status, "msg =", res.message)
