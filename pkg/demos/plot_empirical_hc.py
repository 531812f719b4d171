"""
Empirical Higher Criticism on simulated z-scores
================================================

Draws d = 10,000 z-scores, turns them into one-sided p-values and finds the
HC threshold by maximizing the objective over the order statistics.
"""

# %%
import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from rareweak import (
    PValueSample,
    RwModel,
    classify,
    empirical_hc_threshold,
    hc_threshold,
    p_value,
    sample,
)
from rareweak import normal

m = RwModel(0.1, 4.0)
data = sample(m, 10_000, seed=1)
s = PValueSample.from_values(p_value(data.z))
res = empirical_hc_threshold(s)

print(f"HC* = {res.hc_star:.2f} at p_(i) = {res.threshold:.3g}, i = {res.argmax_index + 1}")
print(f"as a z-score: {normal.isf(res.threshold):.3f}  (population value {hc_threshold(m):.4f})")

# %%
# Everything with a p-value strictly below the threshold is called non-null.
called = classify(p_value(data.z), res.threshold)
print(f"called {called.sum()} features, {np.sum(called & data.is_alternative)} of them true signals")

# %%
# The objective over the lower half of the p-values.
half = s.d // 2
plt.semilogx(s.p_sorted[:half], res.objective_values[:half], lw=0.8)
plt.axvline(res.threshold, color="r", linestyle="--")
plt.xlabel("p-value")
plt.ylabel("HC objective")
plt.savefig("empirical_hc.png", dpi=120)
