"""
Behaviour near the orbit
========================

Closed-form Jacobian at ``(r_d, pi/2)`` against a central finite difference.
"""

# %%
import math

import numpy as np

from circumnav import DesignParams, PolarState, linearize, local_convergence_rate, polar_derivatives, validate_radii
from circumnav.controller import turn_rate

params = DesignParams(validate_radii(1.0, 0.7, 0.4), 0.6, 0.05, 0.5)
lin = linearize(params)
print(lin.A)
print("eigenvalues", lin.eigenvalues, lin.regime.value)
print("decay rate", local_convergence_rate(lin), "1/s")

# %%
def f(x):
    r, th = x
    return np.array(polar_derivatives(PolarState(r, th), params.V, turn_rate(r, th, params)))


x0, h = np.array([1.0, math.pi / 2]), 1e-6
J = np.column_stack([(f(x0 + h * e) - f(x0 - h * e)) / (2 * h) for e in np.eye(2)])
print(J)
print(np.linalg.eigvals(J))

# %% [markdown]
# The damping is set by ``kappa/delta**2`` alone; ``k V`` sets the natural
# frequency. Raising ``kappa`` past ``2 k V delta**2`` makes both roots real.

# %%
for kappa in (0.01, 0.05, 0.2, 1.0):
    p = DesignParams(params.radii, 0.6, kappa, 0.5)
    l = linearize(p)
    print(f"kappa={kappa:<5} {l.regime.value:>24}  rate={local_convergence_rate(l):.4f}")
