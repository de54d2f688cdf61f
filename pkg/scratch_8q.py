"""Feasibility: 8-qubit Gibbs, timing at n_dt 13 vs 1."""
import time
import numpy as np
from scipy.optimize import minimize

from hebm.pauli import build_parent_ansatz
from hebm.statevector import prepare_equal_state, trotter_propagate, TrotterConfig
from hebm.kernels import gaussian_kernel, mmd_loss
from hebm.targets import gibbs_distribution, GibbsSpec, total_variation

f = gibbs_distribution(GibbsSpec(8, 1.0))
kernel = gaussian_kernel(8)
psi0 = prepare_equal_state(8)

for n_dt, order, maxiter in [(1, 2, 2000), (13, 2, 600)]:
    h = build_parent_ansatz(8)
    cfg = TrotterConfig(n_dt=n_dt, order=order)

    def loss(theta):
        h.set_coefficients(theta)
        x = trotter_propagate(psi0, h, cfg).probabilities()
        return mmd_loss(x, f, kernel)

    print(f"n_dt={n_dt} order={order}:")
    for seed in range(3):
        rng = np.random.default_rng(seed)
        x0 = rng.uniform(-0.1, 0.1, h.n_terms)
        t0 = time.time()
        res = minimize(loss, x0, method="L-BFGS-B",
                       options=dict(maxiter=maxiter, ftol=1e-12, gtol=1e-10, eps=1e-6, maxcor=10))
        dt = time.time() - t0
        h.set_coefficients(res.x)
        x = trotter_propagate(psi0, h, cfg).probabilities()
        tv = total_variation(x, f)
        print(f"  seed={seed}: loss={res.fun:.3e} tv={tv:.4f} nit={res.nit} nfev={res.nfev} {dt:.1f}s")
