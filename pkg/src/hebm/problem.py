"""Binding of ansatz, initial state, target, and kernel into a loss over
Hamiltonian coefficients, with finite-difference and parameter-shift
gradients."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .kernels import KernelMatrix, mmd_loss
from .noise import NoiseConfig, density_from_state, noisy_distribution, noisy_propagate
from .optimize import (
    LossTrace,
    OptimizerConfig,
    finite_difference_gradient,
    minimize,
    random_initial_parameters,
)
from .pauli import ParametricHamiltonian
from .statevector import (
    BitOrder,
    StateVector,
    TrotterConfig,
    probabilities,
    trotter_propagate,
    trotter_step_schedule,
)
from .targets import validate_distribution


@dataclass
class BornMachineProblem:
    """A fixed learning problem: fit coefficients so the Trotterized
    propagator maps the initial state onto the target distribution.

    The Hamiltonian acts as a term-structure template; its coefficient
    vector is overwritten on every evaluation. With ``noise`` set the
    forward pass runs on the density matrix and reads diag(rho).
    """

    hamiltonian: ParametricHamiltonian
    initial_state: StateVector
    target: np.ndarray
    kernel: KernelMatrix
    trotter: TrotterConfig
    bit_order: BitOrder = BitOrder.MSB_FIRST
    noise: NoiseConfig | None = None

    def __post_init__(self):
        n = self.hamiltonian.n_qubits
        dim = 1 << n
        if self.initial_state.n_qubits != n:
            raise ValueError(
                f"initial state on {self.initial_state.n_qubits} qubits, "
                f"Hamiltonian on {n}"
            )
        self.target = np.asarray(self.target, dtype=np.float64)
        if self.target.shape != (dim,):
            raise ValueError(f"target shape {self.target.shape}, expected ({dim},)")
        validate_distribution(self.target)
        if self.kernel.dim != dim:
            raise ValueError(f"kernel dim {self.kernel.dim}, expected {dim}")
        self.hamiltonian = self.hamiltonian.copy()

    @property
    def n_parameters(self) -> int:
        return self.hamiltonian.n_terms

    def distribution(
        self, theta, occurrence_shift: tuple[int, float] | None = None
    ) -> np.ndarray:
        """Forward pass: calculated distribution for a coefficient vector."""
        self.hamiltonian.set_coefficients(theta)
        if self.noise is None:
            out = trotter_propagate(
                self.initial_state,
                self.hamiltonian,
                self.trotter,
                self.bit_order,
                occurrence_shift=occurrence_shift,
            )
            return probabilities(out)
        rho = density_from_state(self.initial_state)
        rho = noisy_propagate(
            rho,
            self.hamiltonian,
            self.trotter,
            self.noise,
            self.bit_order,
            occurrence_shift=occurrence_shift,
        )
        return noisy_distribution(rho)

    def loss(self, theta) -> float:
        return mmd_loss(self.distribution(theta), self.target, self.kernel)


def loss_of_parameters(theta, problem: BornMachineProblem) -> float:
    """Set coefficients, propagate, and return the kernel loss."""
    return problem.loss(theta)


def noisy_loss_of_parameters(
    theta, problem: BornMachineProblem, noise: NoiseConfig
) -> float:
    """The loss with the forward pass routed through the noisy pipeline."""
    return replace(problem, noise=noise).loss(theta)


def parameter_shift_gradient(theta, problem: BornMachineProblem) -> np.ndarray:
    """Exact gradient from shifted-circuit evaluations.

    Every occurrence of coefficient j in the Trotter schedule is an
    exp(-i*s*theta_j*P) gate; the derivative of any measurement probability
    with respect to the gate angle is the difference of the two evaluations
    shifted by +-pi/4 in gate angle, so d x / d theta_j sums
    s * (x_plus - x_minus) over the occurrences and the loss gradient is
    2 (x - f)^T K (d x / d theta_j).
    """
    theta = np.asarray(theta, dtype=np.float64)
    x = problem.distribution(theta)
    residual = 2.0 * (problem.kernel.matrix @ (x - problem.target))
    step = trotter_step_schedule(problem.n_parameters, problem.trotter)
    grad = np.zeros(problem.n_parameters)
    occ = 0
    for _ in range(problem.trotter.n_dt):
        for j, scale in step:
            x_plus = problem.distribution(theta, occurrence_shift=(occ, math.pi / 4))
            x_minus = problem.distribution(theta, occurrence_shift=(occ, -math.pi / 4))
            grad[j] += scale * float(residual @ (x_plus - x_minus))
            occ += 1
    return grad


def gradient(theta, problem: BornMachineProblem, config: OptimizerConfig) -> np.ndarray:
    """Loss gradient in the configured mode (central FD or parameter shift)."""
    if config.gradient_mode == "parameter-shift":
        return parameter_shift_gradient(theta, problem)
    return finite_difference_gradient(problem.loss, theta, config.fd_step)


def fit(problem: BornMachineProblem, config: OptimizerConfig,
        loss_threshold: float | None = None) -> LossTrace:
    """Minimize the problem loss from a seeded random start."""
    x0 = random_initial_parameters(problem.n_parameters, config.rng_seed)
    if config.gradient_mode == "parameter-shift":
        grad = lambda v: parameter_shift_gradient(v, problem)
    else:
        grad = None
    return minimize(
        problem.loss,
        x0,
        config,
        gradient=grad,
        distribution_fn=problem.distribution,
        loss_threshold=loss_threshold,
    )
