"""
Error counts for HC, CB and FNDR thresholds
===========================================

Repeats the sample / threshold / count loop at eps = 0.01 for four signal
strengths and prints mean FP, FN and total error with standard deviations.
B = 200 takes a few seconds per strength; pass B=1000 for a slower, closer
look.
"""

# %%
import sys

from rareweak import StudyConfig, run_study

B = int(sys.argv[1]) if len(sys.argv) > 1 else 200
cfg = StudyConfig(epsilon=0.01, tau_list=(3, 4, 5, 6), d=10_000, replications=B, master_seed=42,
                  methods=("HC", "CB", "FNDR"))
summary = run_study(cfg)

# %%
print(f"{'tau':>4} {'method':>6} {'FP':>14} {'FN':>14} {'FP+FN':>14}")
for tau in cfg.tau_list:
    for method in cfg.methods:
        cells = [
            f"{summary.mean(method, tau, k):6.1f} ({summary.sd(method, tau, k):5.1f})"
            for k in ("fp", "fn", "total")
        ]
        print(f"{tau:4g} {method:>6} " + " ".join(cells))
