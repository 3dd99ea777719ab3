# %% [markdown]
# Golden mean shift: three ways to see the same number
#
# No two adjacent 1s. The entropy is log of the golden ratio, which the
# transfer matrix gives directly. Here we recover it by counting sofic
# microstates on cycles and by counting box patterns along Følner boxes.

# %%
import math

from soficent.amenable import h_a_topological
from soficent.groups import integers
from soficent.registry import default_schedule
from soficent.estimators import h_topological
from soficent.shifts import golden_mean
from soficent.transfer import transfer_matrix_entropy

Z = integers()
gm = golden_mean(Z)
exact = transfer_matrix_entropy(gm)
print(f"transfer matrix: {exact:.6f}  (log phi = {math.log((1 + 5 ** .5) / 2):.6f})")

# %% [markdown]
# Sofic side. A labeling of a d-cycle is a good microstate when its pullback
# windows avoid "11", so the count is the Lucas number L_d.

# %%
rep = h_topological(gm, default_schedule(gm, d_list=(4, 8, 12, 16), delta_list=(0.5,)))
for cell in rep.cells:
    print(f"d={cell.d:3d}  (1/d) log N = {cell.value.lo:.6f}")
print("headline", rep.headline)

# %% [markdown]
# The headline takes the max over the maps in the schedule, a finite stand-in
# for the limsup. Small cycles overshoot, so the max is the d=4 value.
#
# Amenable side: m(F_n) / |F_n| is non-increasing in n and its infimum is the
# entropy. The lower end comes from counting closed loops in the allowed
# transition graph.

# %%
est = h_a_topological(gm, None, range(2, 21, 3))
for n, v in est.trace.normalized.items():
    print(f"n={n:2d}  m/|F| = {v:.6f}")
print("bracket", est.bracket, "contains exact:", est.bracket.contains(exact))
