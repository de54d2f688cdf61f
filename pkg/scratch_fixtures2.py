"""Broader convention scan: global time-scale factor c in expm(-i c H), Gibbs beta."""
import numpy as np
from scipy.linalg import expm

from hebm.pauli import build_parent_ansatz, build_bas_ansatz
from hebm.statevector import BitOrder, prepare_basis_state, prepare_equal_state, basis_index_from_bits
from hebm.kernels import gaussian_kernel, mmd_loss
from hebm.targets import bas_distribution, gaussian_distribution, gibbs_distribution, GaussianSpec, GibbsSpec

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
MATS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def dense_pauli(axes, bit_order):
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


TABLE_GAUSS = [0.2008, 0.8457, 0.6089, -0.3251, 0.2775, 0.8582, 0.5669, 0.4517,
               -0.4513, 0.4919, 0.5451, 1.4832]
TABLE_GIBBS = [0.3643, 0.7146, 0.4233, 0.9922, 0.4663, 0.4156, 0.6731, 0.1819,
               0.5791, 0.3791, 0.86, 0.6178]
TABLE_BAS = [1.0394, -0.1942, 0.815, 0.6398, 0.2017, 0.2785, 0.2778, 0.9521,
             0.9634, 0.4319, 0.5184, 0.0937, -0.2552, 0.5004, -0.0687, 0.6652]

kernel = gaussian_kernel(4)
f_gauss = gaussian_distribution(GaussianSpec(4, 7.5, 1.0))
f_bas = bas_distribution(4)

# scan scale factor c, record best
cs = np.linspace(0.05, 4.0, 400)
for name, build, tab, init, f in [
    ("gauss", build_parent_ansatz, TABLE_GAUSS, "equal", f_gauss),
    ("bas", build_bas_ansatz, TABLE_BAS, "bits1010", f_bas),
]:
    h = build(4)
    h.set_coefficients(tab)
    for bo in (BitOrder.MSB_FIRST, BitOrder.LSB_FIRST):
        Hd = dense_h(h, bo)
        if init == "equal":
            psi0 = prepare_equal_state(4).amplitudes
        else:
            psi0 = prepare_basis_state(4, basis_index_from_bits("1010", bo)).amplitudes
        evals, evecs = np.linalg.eigh(Hd)
        coef0 = evecs.conj().T @ psi0
        best = (np.inf, None)
        for c in cs:
            out = evecs @ (np.exp(-1j * c * evals) * coef0)
            x = np.abs(out) ** 2
            L = mmd_loss(x, f, kernel)
            if L < best[0]:
                best = (L, c)
        print(f"{name:6s} {bo.value:10s} best loss {best[0]:.3e} at c={best[1]:.4f}")

# gibbs: scan (c, beta) jointly
h = build_parent_ansatz(4)
h.set_coefficients(TABLE_GIBBS)
betas = np.linspace(0.1, 3.0, 60)
for bo in (BitOrder.MSB_FIRST, BitOrder.LSB_FIRST):
    Hd = dense_h(h, bo)
    psi0 = prepare_equal_state(4).amplitudes
    evals, evecs = np.linalg.eigh(Hd)
    coef0 = evecs.conj().T @ psi0
    best = (np.inf, None, None)
    for c in cs:
        out = evecs @ (np.exp(-1j * c * evals) * coef0)
        x = np.abs(out) ** 2
        for b in betas:
            fb = gibbs_distribution(GibbsSpec(4, float(b)))
            L = mmd_loss(x, fb, kernel)
            if L < best[0]:
                best = (L, c, b)
    print(f"gibbs  {bo.value:10s} best loss {best[0]:.3e} at c={best[1]:.4f} beta={best[2]:.3f}")
