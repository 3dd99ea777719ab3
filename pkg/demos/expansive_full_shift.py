# %% [markdown]
# Expansiveness and conditional entropy
#
# Two points of the full shift that agree nowhere near the origin are still
# separated by at least the weight of the origin. That constant is exactly w_0,
# and conditioning on any partition finer than it leaves no entropy behind.

# %%
from soficent.covers import standard_partition, trivial_cover, window_partition
from soficent.estimators import MicrostateTable, expansive_constant, h_cover_conditional
from soficent.registry import builtin, default_schedule

fs = builtin("full-shift-2")
ok, kappa = expansive_constant(fs)
print("expansive:", ok, "constant:", kappa, "w0:", fs.w0)

sched = default_schedule(fs, d_list=(4, 8), delta_list=(0.5, 0.25))
table = MicrostateTable(fs, sched)
U = standard_partition(fs)
for name, V in [("trivial", trivial_cover(fs)), ("standard", U), ("window r2", window_partition(fs, 2))]:
    h = h_cover_conditional(fs, U, V, sched, table).headline
    print(f"h(U | {name:9s}) = {h}")

# %% [markdown]
# Conditioning on the trivial cover gives back h(U) = log 2. Any partition at
# least as fine as U leaves nothing to count.
