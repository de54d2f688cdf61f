"""Bound-constrained quasi-Newton minimization with per-iteration loss tracing.

The heavy lifting is scipy's L-BFGS-B; this module owns the trace recording,
the snapshot bookkeeping, deterministic seeding, and early stopping on a loss
threshold (used by the timing sweep).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

GRADIENT_MODES = ("finite-difference", "parameter-shift")


@dataclass
class OptimizerConfig:
    max_iterations: int = 2000
    convergence_tol: float = 1e-12
    gradient_mode: str = "finite-difference"
    fd_step: float = 1e-6
    bounds: list[tuple[float | None, float | None]] | None = None
    history_size: int = 10
    rng_seed: int = 0
    gradient_tol: float = 1e-10

    def __post_init__(self):
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.fd_step <= 0:
            raise ValueError("fd_step must be positive")
        if self.history_size < 1:
            raise ValueError("history_size must be >= 1")
        if self.gradient_mode not in GRADIENT_MODES:
            raise ValueError(
                f"unknown gradient mode {self.gradient_mode!r}; expected {GRADIENT_MODES}"
            )


@dataclass
class LossTrace:
    """Record of one minimization run.

    ``losses[k]`` is the loss at the k-th accepted iterate (index 0 is the
    starting point), nonincreasing up to line-search tolerance. Distribution
    snapshots are taken at the end and at half the accepted-iterate count
    when the problem exposes a distribution.
    """

    losses: list[float]
    final_parameters: np.ndarray
    iterations_used: int
    wall_time_seconds: float
    converged: bool
    message: str
    final_distribution: np.ndarray | None = None
    half_distribution: np.ndarray | None = None
    threshold_seconds: float | None = None

    @property
    def final_loss(self) -> float:
        return self.losses[-1]


def random_initial_parameters(count: int, seed: int) -> np.ndarray:
    """Deterministic starting coefficients, uniform in [-0.1, 0.1].

    Small near-zero starts keep the early propagator near the identity.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    return rng.uniform(-0.1, 0.1, count)


def finite_difference_gradient(
    fun: Callable[[np.ndarray], float], theta: np.ndarray, step: float = 1e-6
) -> np.ndarray:
    """Central differences, component i = (f(x+h e_i) - f(x-h e_i)) / 2h."""
    theta = np.asarray(theta, dtype=np.float64)
    grad = np.empty_like(theta)
    for i in range(theta.size):
        shift = np.zeros_like(theta)
        shift[i] = step
        fp = fun(theta + shift)
        fm = fun(theta - shift)
        if not (np.isfinite(fp) and np.isfinite(fm)):
            raise FloatingPointError(
                f"nonfinite loss while differencing component {i}: {fp}, {fm}"
            )
        grad[i] = (fp - fm) / (2.0 * step)
    return grad


def minimize(
    fun: Callable[[np.ndarray], float],
    x0: np.ndarray,
    config: OptimizerConfig,
    gradient: Callable[[np.ndarray], np.ndarray] | None = None,
    distribution_fn: Callable[[np.ndarray], np.ndarray] | None = None,
    loss_threshold: float | None = None,
) -> LossTrace:
    """Run L-BFGS-B on ``fun`` and return the loss trace.

    ``gradient`` defaults to central finite differences with the configured
    step. ``loss_threshold`` stops the run as soon as an accepted iterate
    drops below it, recording the elapsed time (timing-sweep support).
    Line-search failure is not fatal: the best-so-far trace is returned
    flagged non-converged.
    """
    x0 = np.asarray(x0, dtype=np.float64)
    if gradient is None:
        gradient = lambda v: finite_difference_gradient(fun, v, config.fd_step)

    start = time.perf_counter()
    f0 = float(fun(x0))
    losses = [f0]
    iterates = [x0.copy()]
    threshold_seconds = None

    if loss_threshold is not None and f0 < loss_threshold:
        threshold_seconds = time.perf_counter() - start

    if config.max_iterations == 0 or threshold_seconds is not None:
        wall = time.perf_counter() - start
        return _build_trace(
            losses, iterates, x0, 0, wall, True, "no iterations requested"
            if config.max_iterations == 0 else "threshold met at start",
            distribution_fn, threshold_seconds,
        )

    stopped_early = False

    def _callback(xk):
        nonlocal threshold_seconds, stopped_early
        losses.append(float(fun(xk)))
        iterates.append(np.array(xk))
        if loss_threshold is not None and losses[-1] < loss_threshold:
            threshold_seconds = time.perf_counter() - start
            stopped_early = True
            raise StopIteration

    result = _scipy_minimize(
        fun,
        x0,
        method="L-BFGS-B",
        jac=gradient,
        bounds=config.bounds,
        callback=_callback,
        options=dict(
            maxiter=config.max_iterations,
            ftol=config.convergence_tol,
            gtol=config.gradient_tol,
            maxcor=config.history_size,
        ),
    )

    # L-BFGS-B may return a best-so-far point the callback never saw
    # (e.g. after an abnormal line-search exit).
    final_x = np.asarray(result.x, dtype=np.float64)
    if not np.array_equal(final_x, iterates[-1]):
        losses.append(float(fun(final_x)))
        iterates.append(final_x.copy())

    wall = time.perf_counter() - start
    converged = stopped_early or result.status == 0
    message = "loss threshold reached" if stopped_early else str(result.message)
    return _build_trace(
        losses, iterates, final_x, int(result.nit), wall, converged, message,
        distribution_fn, threshold_seconds,
    )


def _build_trace(
    losses, iterates, final_x, nit, wall, converged, message,
    distribution_fn, threshold_seconds,
) -> LossTrace:
    final_dist = half_dist = None
    if distribution_fn is not None:
        final_dist = distribution_fn(iterates[-1])
        half_dist = distribution_fn(iterates[len(iterates) // 2])
    return LossTrace(
        losses=losses,
        final_parameters=np.asarray(final_x, dtype=np.float64),
        iterations_used=nit,
        wall_time_seconds=wall,
        converged=converged,
        message=message,
        final_distribution=final_dist,
        half_distribution=half_dist,
        threshold_seconds=threshold_seconds,
    )
