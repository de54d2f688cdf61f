"""Density-matrix simulation of propagation under dephasing and
amplitude-relaxation channels.

Density matrices are plain (2^N, 2^N) complex arrays. Each time frame
applies one unitary Trotter slice followed by an exact single-qubit CPTP
channel per qubit, with kick angles freshly sampled for that frame.

The dissipator convention is the trace-preserving
D[L] rho = 2 L rho L^dag - {L^dag L, rho} with phase-kick operator
L1 = sqrt(g1)/2 * Z and pole-kick operator L2 = sqrt(g2/8) * (X -+ iY).
These normalizations make one noise period reproduce the kick-angle
statistics the rates are derived from: the coherence factor per period
is 2 cos^2(t1) - 1 = exp(-g1 tau0) and the pole-jump probability is
sin^2(t2) = 1 - exp(-g2 tau0). The pole-kick sign (jump direction) is
configurable because relaxation toward either pole is physically sensible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli import ParametricHamiltonian
from .statevector import (
    BitOrder,
    StateVector,
    TrotterConfig,
    _bit_shift,
    rotate_amplitudes,
    trotter_step_schedule,
)

JUMP_DIRECTIONS = ("toward-one", "toward-zero")

# Clamp for sampled phase-kick angles: the rate diverges at 45 degrees.
PHASE_ANGLE_CLAMP_DEG = 44.999


class DensityMatrixError(RuntimeError):
    """Density-matrix invariant violated beyond tolerance."""


@dataclass
class NoiseConfig:
    """Per-qubit noise settings for the density-matrix pipeline.

    Kick angles are drawn uniformly from [-v, +v] degrees for each variance
    v, independently per qubit and per time frame, deterministically from
    ``rng_seed``. ``tau0`` is the noise period; it defaults to 1/n_dt in
    natural units (energy unit over hbar equal to 1).
    """

    phase_variance_deg: float = 0.0
    pole_variance_deg: float = 0.0
    tau0: float | None = None
    n_dt: int = 13
    rng_seed: int = 0
    jump_direction: str = "toward-one"

    def __post_init__(self):
        if not 0.0 <= self.phase_variance_deg <= 45.0:
            raise ValueError("phase variance must be within [0, 45] degrees")
        if not 0.0 <= self.pole_variance_deg <= 45.0:
            raise ValueError("pole variance must be within [0, 45] degrees")
        if self.tau0 is not None and self.tau0 <= 0:
            raise ValueError("tau0 must be positive")
        if self.n_dt < 1:
            raise ValueError("n_dt must be >= 1")
        if self.jump_direction not in JUMP_DIRECTIONS:
            raise ValueError(
                f"unknown jump direction {self.jump_direction!r}; "
                f"expected {JUMP_DIRECTIONS}"
            )

    def resolved_tau0(self, n_dt: int) -> float:
        return self.tau0 if self.tau0 is not None else 1.0 / n_dt


def jump_rates(theta1_deg: float, theta2_deg: float, tau0: float) -> tuple[float, float]:
    """Dissipation rates from sampled kick angles over one noise period.

    g1 = -ln(2 cos^2 t1 - 1) / tau0 for the phase kick and
    g2 = -ln(cos^2 t2) / tau0 for the pole kick, angles in degrees.
    The phase rate diverges at 45 degrees and the pole rate at 90, so
    those boundaries are rejected.
    """
    if tau0 <= 0:
        raise ValueError("tau0 must be positive")
    if abs(theta1_deg) >= 45.0:
        raise ValueError(
            f"phase kick angle {theta1_deg} deg outside (-45, 45): rate diverges"
        )
    if abs(theta2_deg) >= 90.0:
        raise ValueError(
            f"pole kick angle {theta2_deg} deg outside (-90, 90): rate diverges"
        )
    c1 = math.cos(math.radians(theta1_deg))
    c2 = math.cos(math.radians(theta2_deg))
    gamma1 = -math.log(2.0 * c1 * c1 - 1.0) / tau0
    gamma2 = -math.log(c2 * c2) / tau0
    return gamma1, gamma2


def sample_noise_angles(cfg: NoiseConfig, count: int) -> np.ndarray:
    """Draw ``count`` (phase, pole) angle pairs in degrees, seeded.

    Phase angles are clamped strictly inside (-45, 45) so the derived rate
    stays finite even at the maximal variance setting.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = np.random.default_rng(cfg.rng_seed)
    angles = np.empty((count, 2))
    angles[:, 0] = rng.uniform(-cfg.phase_variance_deg, cfg.phase_variance_deg, count)
    angles[:, 1] = rng.uniform(-cfg.pole_variance_deg, cfg.pole_variance_deg, count)
    np.clip(
        angles[:, 0], -PHASE_ANGLE_CLAMP_DEG, PHASE_ANGLE_CLAMP_DEG, out=angles[:, 0]
    )
    return angles


def single_qubit_channel(
    gamma1: float, gamma2: float, dt: float, direction: str = "toward-one"
) -> np.ndarray:
    """Kraus operators (stacked (k, 2, 2)) of the exact combined channel.

    This is the closed-form exponential of D[L1] + D[L2] over duration dt
    (module docstring has the operator conventions): the two dissipators
    commute, populations relax toward the chosen pole with transfer
    probability p = 1 - exp(-g2 dt), and coherences shrink by
    exp(-(g1 + g2/2) dt). Completely positive and trace preserving.
    """
    if gamma1 < 0 or gamma2 < 0:
        raise ValueError("rates must be nonnegative")
    if dt <= 0:
        raise ValueError("dt must be positive")
    if direction not in JUMP_DIRECTIONS:
        raise ValueError(f"unknown jump direction {direction!r}")

    p = 1.0 - math.exp(-gamma2 * dt)
    q = 0.5 * (1.0 - math.exp(-gamma1 * dt))

    if direction == "toward-one":
        a0 = np.array([[math.sqrt(1.0 - p), 0.0], [0.0, 1.0]], dtype=np.complex128)
        a1 = np.array([[0.0, 0.0], [math.sqrt(p), 0.0]], dtype=np.complex128)
    else:
        a0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=np.complex128)
        a1 = np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=np.complex128)

    d0 = math.sqrt(1.0 - q) * np.eye(2, dtype=np.complex128)
    d1 = math.sqrt(q) * np.diag([1.0, -1.0]).astype(np.complex128)

    kraus = [d @ a for d in (d0, d1) for a in (a0, a1)]
    return np.stack(kraus)


def density_from_state(state: StateVector) -> np.ndarray:
    """Pure-state density matrix |psi><psi|."""
    psi = state.amplitudes
    return np.outer(psi, psi.conj())


def check_density(
    rho: np.ndarray, trace_tol: float = 1e-9, herm_tol: float = 1e-10
) -> None:
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > trace_tol:
        raise DensityMatrixError(f"trace drifted to {trace!r}")
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > herm_tol:
        raise DensityMatrixError(f"hermiticity violated by {herm:.3e}")


def apply_single_qubit_channel(
    rho: np.ndarray,
    kraus: np.ndarray,
    qubit: int,
    n_qubits: int,
    bit_order: BitOrder = BitOrder.MSB_FIRST,
) -> np.ndarray:
    """sum_k K_k rho K_k^dag with 2x2 Kraus operators acting on one qubit."""
    shift = _bit_shift(qubit, n_qubits, bit_order)
    axis = n_qubits - 1 - shift
    pre = 1 << axis
    post = 1 << (n_qubits - 1 - axis)
    t = rho.reshape(pre, 2, post, pre, 2, post)
    out = np.einsum("kij,klm,ajbgmd->aibgld", kraus, kraus.conj(), t)
    return out.reshape(rho.shape)


def _rotate_density(rho, pauli, angle, bit_order):
    """rho -> R rho R^dag for R = exp(-i*angle*P), via two row rotations."""
    half = rotate_amplitudes(rho, pauli, angle, bit_order)
    return rotate_amplitudes(half.conj().T, pauli, angle, bit_order).conj().T


def noisy_propagate(
    rho: np.ndarray,
    hamiltonian: ParametricHamiltonian,
    cfg: TrotterConfig,
    noise: NoiseConfig,
    bit_order: BitOrder = BitOrder.MSB_FIRST,
    angles_deg: np.ndarray | None = None,
    occurrence_shift: tuple[int, float] | None = None,
    check: bool = True,
) -> np.ndarray:
    """Alternate unitary Trotter slices with per-qubit noise channels.

    Each of the n_dt frames applies the frame's rotations (lifted to the
    density matrix) followed by a channel of duration tau0/n_dt per qubit,
    with rates derived from that frame's sampled kick angles. The run's
    dissipative exposure therefore integrates to one noise period: the
    generator is fixed and n_dt only refines the splitting, so refining
    the time grid does not multiply the noise. With the default tau0 of
    1/n_dt the per-frame decay is the sampled kick to the power 1/n_dt
    and the run total approaches the mean kick strength.

    ``angles_deg`` overrides the sampling with explicit angles of shape
    (n_dt, n_qubits, 2); ``occurrence_shift`` offsets a single rotation
    angle for the parameter-shift rule. Trace or hermiticity drift raises
    :class:`DensityMatrixError`.
    """
    n = hamiltonian.n_qubits
    dim = 1 << n
    if rho.shape != (dim, dim):
        raise ValueError(f"density matrix shape {rho.shape}, expected {(dim, dim)}")
    if angles_deg is None:
        angles_deg = sample_noise_angles(noise, cfg.n_dt * n).reshape(cfg.n_dt, n, 2)
    else:
        angles_deg = np.asarray(angles_deg, dtype=np.float64)
        if angles_deg.shape != (cfg.n_dt, n, 2):
            raise ValueError(
                f"angle array shape {angles_deg.shape}, expected {(cfg.n_dt, n, 2)}"
            )

    tau0 = noise.resolved_tau0(cfg.n_dt)
    frame_dt = tau0 / cfg.n_dt
    step = trotter_step_schedule(hamiltonian.n_terms, cfg)
    coeffs = hamiltonian.coefficients
    occ = 0
    for frame in range(cfg.n_dt):
        for j, scale in step:
            angle = coeffs[j] * scale
            if occurrence_shift is not None and occ == occurrence_shift[0]:
                angle += occurrence_shift[1]
            rho = _rotate_density(rho, hamiltonian.paulis[j], angle, bit_order)
            occ += 1
        for q in range(n):
            g1, g2 = jump_rates(
                angles_deg[frame, q, 0], angles_deg[frame, q, 1], tau0
            )
            if g1 == 0.0 and g2 == 0.0:
                continue
            kraus = single_qubit_channel(g1, g2, frame_dt, noise.jump_direction)
            rho = apply_single_qubit_channel(rho, kraus, q, n, bit_order)

    if check:
        check_density(rho)
    return rho


def noisy_distribution(rho: np.ndarray) -> np.ndarray:
    """Measurement distribution diag(rho), clipped of negative rounding dust."""
    probs = np.real(np.diag(rho)).copy()
    np.clip(probs, 0.0, None, out=probs)
    return probs
