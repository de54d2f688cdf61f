"""Feasibility: L-BFGS-B + FD gradient on the three learning problems, 5 seeds."""
import time
import numpy as np
from scipy.optimize import minimize

from hebm.pauli import build_parent_ansatz, build_bas_ansatz
from hebm.statevector import BitOrder, prepare_basis_state, prepare_equal_state, trotter_propagate, TrotterConfig, basis_index_from_bits
from hebm.kernels import gaussian_kernel, mmd_loss
from hebm.targets import bas_distribution, gaussian_distribution, gibbs_distribution, GaussianSpec, GibbsSpec

kernel4 = gaussian_kernel(4)

def run(name, build, init, f, n=4, n_dt=13, order=2, seeds=range(5), maxiter=2000, kernel=None):
    kernel = kernel or kernel4
    h = build(n)
    cfg = TrotterConfig(n_dt=n_dt, order=order)
    psi0 = prepare_equal_state(n) if init == "equal" else prepare_basis_state(n, basis_index_from_bits("1010", BitOrder.MSB_FIRST))

    def loss(theta):
        h.set_coefficients(theta)
        x = trotter_propagate(psi0, h, cfg).probabilities()
        return mmd_loss(x, f, kernel)

    results = []
    for seed in seeds:
        rng = np.random.default_rng(seed)
        x0 = rng.uniform(-0.1, 0.1, h.n_terms)
        t0 = time.time()
        res = minimize(loss, x0, method="L-BFGS-B", jac=None,
                       options=dict(maxiter=maxiter, ftol=1e-12, gtol=1e-10, eps=1e-6, maxcor=10))
        dt = time.time() - t0
        results.append(res.fun)
        print(f"  {name} seed={seed}: loss={res.fun:.3e} nit={res.nit} nfev={res.nfev} {dt:.1f}s {res.message[:40]}")
    print(f"  => best {min(results):.3e}, worst {max(results):.3e}")
    return results

print("Gaussian 4q (parent, equal):")
run("gauss", build_parent_ansatz, "equal", gaussian_distribution(GaussianSpec(4, 7.5, 1.0)))
print("Gibbs 4q beta=1 (parent, equal):")
run("gibbs", build_parent_ansatz, "equal", gibbs_distribution(GibbsSpec(4, 1.0)))
print("BAS 4q from |1010> (bas ansatz):")
run("bas", build_bas_ansatz, "1010", bas_distribution(4))
print("BAS 4q from equal (negative control):")
run("bas-neg", build_bas_ansatz, "equal", bas_distribution(4))
