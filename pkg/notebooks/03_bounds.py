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
# # Analytic constants behind the sup bound
#
# The a-priori estimate for `u` is built from a Sobolev embedding constant,
# a Poincare constant and an interpolation constant `C3(q)`.  None of them
# are needed to simulate; they show how far the analysis is from the
# numbers a simulation produces.

# %%
from acidsim.bounds import (
    BoundParams,
    DomainGeometry,
    apriori_sup_bound,
    growth_constant_C3,
    log_growth_constant_C3,
    sobolev_constant,
    sup_bound_report,
    verify_moser_exponents,
)

line = DomainGeometry.interval(-5.0, 5.0)
print("C_S on (-5, 5):", sobolev_constant(line))
print("C_S on unit square, p=4:", sobolev_constant(DomainGeometry.box(1.0, 1.0), 4.0))

# %% [markdown]
# ## Where the bound applies
#
# Every exponent in the bound shares the denominator `beta + 1 - alpha`
# (in one dimension).  The reference simulations use `alpha >= 2` with
# `beta = 1`, which makes it non-positive, so the bound says nothing there.

# %%
reference = BoundParams(alpha=2.0, beta=1.0, mu1=1.0, mu3_tilde_sup=0.5, delta=0.5, eta=1e-5)
print(sup_bound_report(1.55, reference, line))

# %% [markdown]
# With `beta` large enough the bound is finite, though astronomically loose.

# %%
ok = BoundParams(alpha=1.5, beta=2.0, mu1=1.0, mu3_tilde_sup=0.5, delta=0.5, eta=0.1)
print("sup bound:", apriori_sup_bound(ok, line))
print("C3(q=3):", growth_constant_C3(3.0, 1.0, 1.0, ok, line))

# %% [markdown]
# ## Growth of C3 in q
#
# `C3(q)^(1/q)` diverges, which is why the Moser iteration is needed instead
# of letting `q` go to infinity directly.  Logarithms avoid overflow.

# %%
for q in (10.0, 1e2, 1e3, 1e4):
    print(f"q={q:>8g}  log C3 / q = {log_growth_constant_C3(q, 1.0, 1.0, ok, line) / q:.4f}")

# %% [markdown]
# ## Moser exponents
#
# The iteration step needs three exponent identities; they hold to rounding.

# %%
for k in (2, 5, 10, 20):
    e1, e2, e3 = verify_moser_exponents(k, 2.0, 10.0)
    print(k, e1, e2, 10 / 8, e3 <= 3.0)
