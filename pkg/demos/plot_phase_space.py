"""
Phase space and the HC / CB ratio
=================================

Draws the detection, identification and recovery boundaries in (beta, r)
and the ratio z_HC / z_CB on and above the identification boundary.
"""

# %%
import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from rareweak import (
    RwModel,
    classify_region,
    detection_boundary,
    hc_cb_ratio_at_boundary,
    identification_boundary,
    recovery_boundary,
    to_phase,
)

# %%
# The simulation settings eps = 0.01, tau = 3..6 at d = 10,000.
for tau in (3.0, 4.0, 5.0, 6.0):
    c = to_phase(RwModel(0.01, tau), 10_000)
    print(f"tau = {tau}: beta = {c.beta:.3f}, r = {c.r:.3f} -> {classify_region(c).label}")

# %%
fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
beta = np.linspace(0.5, 1.0, 200)
left.plot(beta, [detection_boundary(b) for b in beta], label="detection")
left.plot(beta, [identification_boundary(b) for b in beta], lw=2, label="identification")
left.plot(beta, [recovery_boundary(b) for b in beta], label="recovery")
left.set_xlabel("beta")
left.set_ylabel("r")
left.legend()

eps = np.geomspace(1e-6, 0.3, 60)
for dr, style in [(0.0, "-"), (0.25, ":"), (0.5, ":")]:
    right.semilogx(eps, [hc_cb_ratio_at_boundary(e, dr) for e in eps], linestyle=style,
                   label=f"delta r = {dr}")
right.set_xlabel("epsilon")
right.set_ylabel("z_HC / z_CB")
right.legend()
fig.savefig("phase_space.png", dpi=120)
