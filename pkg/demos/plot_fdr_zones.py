"""
Local fdr, the class boundary and its neighbours
================================================

Fits the two-component mixture to simulated z-scores and reads off the
cutoffs where the local fdr equals 0.8, 0.5 (class boundary) and 0.2.
"""

# %%
import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from rareweak import (
    RwModel,
    cutoff_from_curve,
    fdr_cutoff,
    fit_mixture,
    local_fdr_curve,
    oracle_fit,
    sample,
)

m = RwModel(0.1, 3.0)
z = sample(m, 10_000, seed=4).z
fit = fit_mixture(z)
print(f"eta0_hat = {fit.eta0_hat:.4f}, tau_hat = {fit.tau_hat:.3f}, {fit.iterations} EM steps")

# %%
grid = np.arange(-4, 9, 1e-3)
est = local_fdr_curve(fit, grid)
true = local_fdr_curve(oracle_fit(m), grid)
for level in (0.8, 0.5, 0.2):
    print(
        f"fdr = {level}: estimated {cutoff_from_curve(est, level):.3f}, "
        f"true {fdr_cutoff(m, level):.3f}"
    )

# %%
# Tail-area Fdr never exceeds the local fdr.
plt.plot(grid, est.local_fdr, label="local fdr (fit)")
plt.plot(grid, true.local_fdr, linestyle=":", label="local fdr (true)")
plt.plot(grid, est.tail_fdr, label="tail Fdr (fit)")
for level in (0.8, 0.5, 0.2):
    plt.axhline(level, color="grey", lw=0.5)
plt.xlabel("z")
plt.legend()
plt.savefig("fdr_zones.png", dpi=120)
