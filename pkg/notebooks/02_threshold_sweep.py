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
# # Locating the blow-up threshold in the Allee exponent
#
# `find_alpha_star` walks a 0.1-spaced grid of `alpha` values.  Coarse mode
# tries every tenth value, then fills in the bracket where the first blow-up
# appeared.  Full mode runs everything, which matters when blow-up is not
# monotone in `alpha`.
#
# Catalog scenarios carry their own sweep range.  Overrides use the same
# `key=value` syntax as the command line.

# %%
from acidsim.harness import find_alpha_star, scenario_names
from acidsim.harness.runner import resolve_scenario

QUICK = True
print([n for n in scenario_names() if n.startswith("table1/")])

# %% [markdown]
# ## Coarse-to-fine on logistic kernels
#
# `QUICK` shortens the horizon and coarsens the grid so the cell finishes in
# seconds; the threshold it reports is then not meaningful.  With
# `QUICK = False` expect about ten runs of 20 seconds each.

# %%
overrides = ["time.T=2", "domain.dx=0.25"] if QUICK else []
scenario, items = resolve_scenario("table1/logistic-logistic", overrides)
result = find_alpha_star(scenario)
for alpha, status in result.statuses:
    print(f"{alpha:5.1f}  {status}")
print("alpha*:", result.alpha_star)

# %% [markdown]
# ## Full sweep over a narrow window
#
# For the large-`beta` row the status list can alternate between
# completion and blow-up.  A full sweep over a short window exposes that.

# %%
overrides = ["time.T=1", "domain.dx=0.25"] if QUICK else []
scenario, _ = resolve_scenario("table2/beta10-gamma1-mu1", overrides)
window = find_alpha_star(scenario, mode="full", alpha_min=26.5, alpha_max=26.8 if QUICK else 27.6)
print(window.statuses)
print("non-monotone:", window.non_monotone())

# %% [markdown]
# ## Invariant box
#
# Every completed sweep entry stores the extremes of each field over all
# time steps, so positivity and the unit box for `w` and `h` can be checked
# after the fact.

# %%
for e in result.entries:
    if e.status == "Completed":
        print(f"{e.alpha:4.1f}  min u={e.field_min['u']:.2e}  w in [{e.field_min['w']:.3f}, {e.field_max['w']:.3f}]"
              f"  h in [{e.field_min['h']:.3f}, {e.field_max['h']:.3f}]")
