"""
From radii to gains
===================

Pick three radii, check that they are admissible, and derive every
constant the controller needs. Run with ``python3 notebooks/01_design_pipeline.py``.
"""

# %%
import math

from circumnav import DesignParams, blf_value, design_report, eta, validate_radii
from circumnav.errors import GeometryError

# %% [markdown]
# The desired orbit, the auxiliary circle and the safety circle. Two
# inequalities tie them together; a bad triple names the one it breaks.

# %%
radii = validate_radii(1.0, 0.7, 0.4)
for bad in [(1.0, 0.7, 0.2), (1.0, 0.7, 0.5)]:
    try:
        validate_radii(*bad)
    except GeometryError as exc:
        print(f"{bad}: {exc.condition}")

# %% [markdown]
# ``k`` is fixed by the radii. ``Delta`` caps the barrier width so that any
# entry into the auxiliary circle happens at a bearing steep enough to miss
# the safety circle.

# %%
params = DesignParams(radii, V=0.6, kappa=0.05, delta=0.5)
print(f"k     = {params.k:.6f}")
print(f"Delta = {params.Delta:.6f}  (delta = {params.delta})")

# %%
r0, th0 = math.hypot(1.0, 0.8), math.radians(38.0)
e0 = eta(r0, th0, params)
W0 = blf_value(e0, params.delta)
rep = design_report(params, W0, e0)
for key, value in rep.to_dict().items():
    print(f"{key:>24}: {value}")

# %% [markdown]
# ``kappa_threshold`` splits the gain range: above it at most one visit to
# the auxiliary circle is guaranteed.

# %%
print("single entry predicted:", rep.single_entry_predicted)
