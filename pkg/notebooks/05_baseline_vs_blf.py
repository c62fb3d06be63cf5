"""
Why the barrier matters
=======================

A plain range-rate law converges to the same orbit but knows nothing about
the safety circle. From a shallow start bearing it cuts straight through.
"""

# %%
import math

from circumnav import DesignParams, SimConfig, simulate, validate_radii
from circumnav.errors import InitialConditionError

params = DesignParams(validate_radii(1.0, 0.7, 0.4), 0.6, 0.05, 0.5)

# %%
base = SimConfig(params, 1.0, 0.8, theta0=math.radians(5.0), mode="baseline",
                 allow_outside_theta=True, t_final=60.0)
_, s = simulate(base)
print(f"baseline from 5 deg: min range {s.min_range:.3f} (safety radius 0.4)")

# %% [markdown]
# The barrier controller refuses that start: ``eta`` is already past
# ``delta``, so none of its guarantees apply.

# %%
try:
    simulate(SimConfig(params, 1.0, 0.8, theta0=math.radians(5.0)))
except InitialConditionError as exc:
    print("rejected:", exc)

# %%
for deg in (38.0, 60.0, 120.0):
    for mode in ("baseline", "blf_state"):
        cfg = SimConfig(params, 1.0, 0.8, theta0=math.radians(deg), mode=mode, t_final=60.0)
        _, s = simulate(cfg)
        print(f"theta0={deg:5.1f}  {mode:>10}  min range {s.min_range:.3f}  entries {s.entry_count}")
