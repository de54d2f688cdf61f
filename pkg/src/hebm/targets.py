"""Target probability distributions and divergence measures."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# 2x2 bars-and-stripes patterns: tiles read row-major into qubits 0..3.
BAS_2X2_STATES = (0, 3, 5, 10, 12, 15)


@dataclass(frozen=True)
class GaussianSpec:
    """Discretized Gaussian over basis integers, p_j ~ exp(-(j-c)^2 / (2*sigma)).

    The width enters the exponent un-squared; with the default sigma = 1
    the distinction from a variance is moot.
    """

    n_qubits: int = 4
    center: float = 7.5
    width: float = 1.0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        if self.width <= 0:
            raise ValueError("width must be positive")


@dataclass(frozen=True)
class GibbsSpec:
    """Thermal state of the ferromagnetic ZZ ring, H = -sum_j Z_j Z_{j+1}."""

    n_qubits: int = 4
    beta: float = 1.0

    def __post_init__(self):
        if self.n_qubits < 3:
            raise ValueError("ZZ ring needs at least 3 qubits")
        if self.beta <= 0:
            raise ValueError("beta must be positive")


def uniform_distribution(n_qubits: int) -> np.ndarray:
    dim = 1 << n_qubits
    return np.full(dim, 1.0 / dim)


def bas_distribution(n_qubits: int = 4) -> np.ndarray:
    """Uniform distribution over the six 2x2 bars-and-stripes images.

    Probability 1/6 at basis indices {0, 3, 5, 10, 12, 15}, zero elsewhere.
    Only the 2x2 grid (4 qubits) is supported.
    """
    if n_qubits != 4:
        raise ValueError("bars-and-stripes target is defined on the 2x2 grid (4 qubits)")
    probs = np.zeros(16)
    probs[list(BAS_2X2_STATES)] = 1.0 / 6.0
    return probs


def gaussian_distribution(spec: GaussianSpec) -> np.ndarray:
    j = np.arange(1 << spec.n_qubits, dtype=np.float64)
    w = np.exp(-((j - spec.center) ** 2) / (2.0 * spec.width))
    return w / w.sum()


def ring_energies(n_qubits: int) -> np.ndarray:
    """E(b) = -sum_j s_j s_{j+1 mod N} with spins s = +1 for bit 0, -1 for bit 1.

    A ring is invariant under reversing the qubit order, so the energies do
    not depend on the bit-order convention.
    """
    dim = 1 << n_qubits
    bits = (np.arange(dim)[:, None] >> np.arange(n_qubits)[None, :]) & 1
    spins = 1.0 - 2.0 * bits
    return -np.sum(spins * np.roll(spins, -1, axis=1), axis=1)


def gibbs_distribution(spec: GibbsSpec) -> np.ndarray:
    energies = ring_energies(spec.n_qubits)
    w = np.exp(-spec.beta * (energies - energies.min()))
    return w / w.sum()


def kl_divergence(f: np.ndarray, x: np.ndarray) -> float:
    """sum_j f_j ln(f_j / x_j); zero-mass terms of f contribute nothing.

    Returns +inf when f has support where x vanishes.
    """
    f = np.asarray(f, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if f.shape != x.shape:
        raise ValueError(f"dimension mismatch: f {f.shape}, x {x.shape}")
    mask = f > 0
    if np.any(x[mask] == 0):
        return math.inf
    return float(np.sum(f[mask] * np.log(f[mask] / x[mask])))


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    """Half the L1 distance between two probability vectors."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError(f"dimension mismatch: p {p.shape}, q {q.shape}")
    return 0.5 * float(np.abs(p - q).sum())


def validate_distribution(p: np.ndarray, tol: float = 1e-9) -> None:
    p = np.asarray(p)
    if np.any(p < 0):
        raise ValueError(f"negative probability entries (min {p.min():.3e})")
    total = float(p.sum())
    if abs(total - 1.0) > tol:
        raise ValueError(f"probabilities sum to {total!r}, expected 1 within {tol:.0e}")
