"""Kernel matrices and the kernel discrepancy loss between distributions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_BANDWIDTHS = (0.25, 4.0)


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """A real symmetric kernel over computational-basis integers."""

    matrix: np.ndarray
    bandwidths: tuple[float, ...]
    kind: str

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _check_bandwidths(bandwidths) -> tuple[float, ...]:
    bw = tuple(float(b) for b in bandwidths)
    if not bw:
        raise ValueError("bandwidth list must be nonempty")
    if any(b <= 0 for b in bw):
        raise ValueError("bandwidths must be positive")
    return bw


def gaussian_kernel(
    n_qubits: int, bandwidths=DEFAULT_BANDWIDTHS
) -> KernelMatrix:
    """Gaussian kernel over basis-integer distance.

    K_ij = sum_c exp(-(i-j)^2 / (2c)) over the bandwidth set c. Positive
    semidefinite as a sum of Gaussian kernels restricted to the integers.
    """
    bw = _check_bandwidths(bandwidths)
    idx = np.arange(1 << n_qubits, dtype=np.float64)
    sq = (idx[:, None] - idx[None, :]) ** 2
    k = sum(np.exp(-sq / (2.0 * c)) for c in bw)
    return KernelMatrix(k, bw, "gaussian-integer")


def hamming_kernel(
    n_qubits: int, bandwidths=DEFAULT_BANDWIDTHS
) -> KernelMatrix:
    """Gaussian kernel over Hamming distance between basis bit patterns.

    Hamming distance equals (up to a constant) the squared Euclidean
    distance between the +/-1 spin encodings of the two bit patterns, so
    K_ij = sum_c exp(-d_H(i,j) / (2c)) is a genuine Gaussian kernel in
    that embedding and stays positive semidefinite.
    """
    bw = _check_bandwidths(bandwidths)
    dim = 1 << n_qubits
    popcount = np.array([bin(v).count("1") for v in range(dim)], dtype=np.float64)
    idx = np.arange(dim)
    dist = popcount[idx[:, None] ^ idx[None, :]]
    k = sum(np.exp(-dist / (2.0 * c)) for c in bw)
    return KernelMatrix(k, bw, "gaussian-hamming")


def identity_kernel(n_qubits: int) -> KernelMatrix:
    """Identity kernel; reduces the loss to the squared Euclidean distance."""
    return KernelMatrix(np.eye(1 << n_qubits), (), "identity")


KERNEL_KINDS = ("gaussian-integer", "gaussian-hamming", "identity")


def kernel_from_spec(
    kind: str, n_qubits: int, bandwidths=DEFAULT_BANDWIDTHS
) -> KernelMatrix:
    if kind == "gaussian-integer":
        return gaussian_kernel(n_qubits, bandwidths)
    if kind == "gaussian-hamming":
        return hamming_kernel(n_qubits, bandwidths)
    if kind == "identity":
        return identity_kernel(n_qubits)
    raise ValueError(f"unknown kernel kind {kind!r}; expected one of {KERNEL_KINDS}")


def mmd_loss(x: np.ndarray, f: np.ndarray, kernel: KernelMatrix) -> float:
    """Kernel discrepancy x'Kx + f'Kf - 2 f'Kx between two distributions.

    Evaluated in the factored form (x-f)'K(x-f), which is algebraically
    identical for symmetric K and numerically stable near zero.
    """
    x = np.asarray(x, dtype=np.float64)
    f = np.asarray(f, dtype=np.float64)
    if x.shape != f.shape or x.shape != (kernel.dim,):
        raise ValueError(
            f"dimension mismatch: x {x.shape}, f {f.shape}, kernel dim {kernel.dim}"
        )
    d = x - f
    return float(d @ kernel.matrix @ d)
