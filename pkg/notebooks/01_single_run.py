# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # A single run of the acidity-mediated tumour model
#
# Active cells `u`, quiescent cells `w` and protons `h` live on the interval
# [-5, 5].  Active cells start clustered at the left boundary, quiescent cells
# sit right next to them, and the proton field starts on the left half only.
#
# Set `QUICK = False` to use the reference resolution (dx = 0.05, T = 50);
# that takes about 20 seconds per run on one core.

# %%
import numpy as np

from acidsim import SolverConfig, build_grid, paper_coefficients, paper_initial_data, run
from acidsim.harness import count_interior_maxima

QUICK = True
grid = build_grid(-5.0, 5.0, 0.25 if QUICK else 0.05)
T = 5.0 if QUICK else 50.0

# %% [markdown]
# ## Initial data
#
# All three fields start inside the unit box, which the solution keeps for
# `w` and `h` at all times.

# %%
init = paper_initial_data()
u0, w0, h0 = init.sample(grid)
print("max u0, w0, h0:", u0.max(), w0.max(), h0.max())
print("in unit box:", init.in_unit_box(grid))

# %% [markdown]
# ## Logistic kernels with a weak Allee effect
#
# With `alpha = 2` the active population aggregates at the left boundary
# without blowing up.

# %%
spec = paper_coefficients(alpha=2.0)
cfg = SolverConfig(T_final=T, snapshot_times=(0.0, T / 2, T))
out = run(spec, init, cfg, grid)
print(out.status, "engine:", out.diagnostics.engine)
for snap in out.snapshots:
    s = snap.state
    print(f"t={snap.time:6.2f}  max u={s.u.max():.4f} at x={grid.x[np.argmax(s.u)]:+.2f}  max h={s.h.max():.4f}")

# %% [markdown]
# ## Stronger Allee exponent
#
# Raising `alpha` sharpens growth wherever `u` exceeds one.  At the reference
# resolution the run blows up at the left boundary somewhere above
# `alpha = 6`; the quick grid only shows the sharper aggregation.

# %%
for alpha in (4.0, 6.5):
    o = run(paper_coefficients(alpha=alpha), init, SolverConfig(T_final=T), grid)
    print(f"alpha={alpha}: {o.status}", "" if o.blowup is None else f"at t={o.blowup.time:.4f}, x={o.blowup.x:+.2f}")

# %% [markdown]
# ## Counting peaks
#
# The pattern counter reports strict interior maxima rising a given amount
# above the neighbouring minima.  A single aggregate at the boundary counts
# as zero interior peaks.

# %%
u = out.final_state.u
print("interior peaks:", count_interior_maxima(u, 0.1 * u.max()))
