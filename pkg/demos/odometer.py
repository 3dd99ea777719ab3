# %% [markdown]
# The 2-adic odometer is equicontinuous, so every entropy is zero. It is not
# expansive, which makes it a useful foil for the full shift.
#
# The truncation at depth k is a periodic orbit of length 2^k. Cosets of 2^l Z
# give sofic maps that see the whole orbit once l > k.

# %%
from soficent.amenable import cross_check_sofic_amenable
from soficent.estimators import classify
from soficent.odometer import dyadic_odometer
from soficent.registry import default_schedule, odometer_levels

for depth in (2, 4, 6):
    od = dyadic_odometer(depth)
    sched = default_schedule(od)
    cc = cross_check_sofic_amenable(od, sched, [2 ** l for l in odometer_levels(depth)], tail=False)
    print(f"depth {depth}: d = {[s.d for s in sched.sigmas]}")
    print("   sofic   ", cc["entropy"]["sofic"])
    print("   amenable", cc["entropy"]["amenable"])

# %% [markdown]
# Both sides decay like depth * log 2 / d. The classification reports that
# nearby orbit points stay close forever, so there is no expansive constant.

# %%
od = dyadic_odometer(4)
c = classify(od, default_schedule(od))
print("expansive:", c.expansive)
print("h(X|U) bracket:", c.h_conditional)
