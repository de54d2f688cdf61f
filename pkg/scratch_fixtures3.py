"""Exotic variant scan for table fixtures: assignment order, ZXZ centering,
open-chain Gibbs, shifted Gaussian centers, mixed initial-state conventions."""
import itertools
import numpy as np

from hebm.pauli import PauliString, ParametricHamiltonian
from hebm.statevector import BitOrder, prepare_basis_state, prepare_equal_state
from hebm.kernels import gaussian_kernel, mmd_loss
from hebm.targets import bas_distribution, gaussian_distribution, GaussianSpec

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
MATS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def dense_pauli(axes, bo):
    order = range(len(axes)) if bo is BitOrder.MSB_FIRST else reversed(range(len(axes)))
    m = np.array([[1.0]], dtype=complex)
    for q in order:
        m = np.kron(m, MATS[axes[q]])
    return m


def loss_min_over_c(Hd, psi0, f, kernel, cs):
    evals, evecs = np.linalg.eigh(Hd)
    coef0 = evecs.conj().T @ psi0
    best = (np.inf, None)
    for c in cs:
        out = evecs @ (np.exp(-1j * c * evals) * coef0)
        L = mmd_loss(np.abs(out) ** 2, f, kernel)
        if L < best[0]:
            best = (L, c)
    return best


def parent_terms(n, zxz_center):
    terms = []
    for j in range(n):
        ax = ["I"] * n; ax[j] = "Z"; ax[(j + 1) % n] = "Z"
        terms.append("".join(ax))
    for j in range(n):
        ax = ["I"] * n
        if zxz_center == "centered":
            ax[(j - 1) % n] = "Z"; ax[j] = "X"; ax[(j + 1) % n] = "Z"
        else:
            ax[j] = "Z"; ax[(j + 1) % n] = "X"; ax[(j + 2) % n] = "Z"
        terms.append("".join(ax))
    for j in range(n):
        ax = ["I"] * n; ax[j] = "X"
        terms.append("".join(ax))
    return terms


TAB_G = [0.2008, 0.8457, 0.6089, -0.3251, 0.2775, 0.8582, 0.5669, 0.4517,
         -0.4513, 0.4919, 0.5451, 1.4832]
TAB_B = [1.0394, -0.1942, 0.815, 0.6398, 0.2017, 0.2785, 0.2778, 0.9521,
         0.9634, 0.4319, 0.5184, 0.0937, -0.2552, 0.5004, -0.0687, 0.6652]

kernel = gaussian_kernel(4)
cs = np.linspace(0.05, 8.0, 800)
psi_eq = prepare_equal_state(4).amplitudes

def jmajor(tab, n_groups, n):  # reinterpret table as j-major listing
    out = [0.0] * len(tab)
    k = 0
    for j in range(n):
        for g in range(n_groups):
            out[g * n + j] = tab[k]; k += 1
    return out

print("--- Gaussian (parent ansatz variants), targets incl. shifted centers ---")
targets = {
    "c7.5": gaussian_distribution(GaussianSpec(4, 7.5, 1.0)),
    "c6.5": gaussian_distribution(GaussianSpec(4, 6.5, 1.0)),
    "c8.5": gaussian_distribution(GaussianSpec(4, 8.5, 1.0)),
    "sig2": gaussian_distribution(GaussianSpec(4, 7.5, 2.0)),
}
for (assign, zc, bo) in itertools.product(("type", "jmaj"), ("centered", "shifted"), BitOrder):
    tab = TAB_G if assign == "type" else jmajor(TAB_G, 3, 4)
    terms = parent_terms(4, zc)
    Hd = sum(c * dense_pauli(ax, bo) for c, ax in zip(tab, terms))
    for tname, f in targets.items():
        L, c = loss_min_over_c(Hd, psi_eq, f, kernel, cs)
        if L < 2e-2:
            print(f"  assign={assign} zxz={zc} {bo.value} target={tname}: loss={L:.3e} c={c:.3f}")
print("  (nothing printed above = all variants > 2e-2)")

print("--- BAS: mixed conventions (operator bit order x initial index) ---")
f_bas = bas_distribution(4)
bas_terms = []
for ax in ("X", "Y", "Z"):
    for j in range(4):
        a = ["I"] * 4; a[j] = ax; a[(j + 1) % 4] = ax
        bas_terms.append("".join(a))
for j in range(4):
    a = ["I"] * 4; a[j] = "Z"
    bas_terms.append("".join(a))
for assign in ("type", "jmaj"):
    tab = TAB_B if assign == "type" else jmajor(TAB_B, 4, 4)
    for bo in BitOrder:
        Hd = sum(c * dense_pauli(ax, bo) for c, ax in zip(tab, bas_terms))
        for idx in (5, 10):
            psi0 = prepare_basis_state(4, idx).amplitudes
            L, c = loss_min_over_c(Hd, psi0, f_bas, kernel, cs)
            print(f"  assign={assign} {bo.value} |{idx}>: best loss={L:.3e} at c={c:.3f}")
