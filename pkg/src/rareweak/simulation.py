"""Monte-Carlo comparison of HC, CB and FNDR thresholds on RW data.

Each replication draws one sample per ``tau`` from a seed derived from
``(master_seed, rep_index)``. Samples for different ``tau`` therefore share
labels and noise, and results do not depend on the order in which
replications run.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import normal
from .empirical import PValueSample, empirical_hc_threshold
from .fdr import cutoff_from_curve, fit_mixture, local_fdr_curve, oracle_fit
from .model import RwModel, p_value, sample

METHODS = ("HC", "CB", "FNDR", "CB_oracle", "FNDR_oracle", "fdr02")
ERROR_KINDS = ("fp", "fn", "tp", "tn", "total")

# local fdr level that defines each fdr-based method
FDR_LEVELS = {"CB": 0.5, "FNDR": 0.8, "fdr02": 0.2, "CB_oracle": 0.5, "FNDR_oracle": 0.8}
GRID_STEP = 1e-3


@dataclass(frozen=True)
class StudyConfig:
    epsilon: float
    tau_list: tuple
    d: int = 10_000
    replications: int = 200
    master_seed: int = 0
    methods: tuple = ("HC", "CB", "FNDR")
    fdr_mode: str = "estimated"
    search_fraction: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "tau_list", tuple(float(t) for t in self.tau_list))
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.d < 2:
            raise ValueError("d must be >= 2")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not self.tau_list:
            raise ValueError("tau_list must not be empty")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")
        if self.fdr_mode not in ("oracle", "estimated"):
            raise ValueError(f"fdr_mode must be 'oracle' or 'estimated', got {self.fdr_mode!r}")


@dataclass(frozen=True)
class ErrorCounts:
    fp: int
    fn: int
    tp: int
    tn: int

    @property
    def total(self):
        return self.fp + self.fn

    @classmethod
    def tally(cls, declared, truth):
        return cls(
            fp=int(np.sum(declared & ~truth)),
            fn=int(np.sum(~declared & truth)),
            tp=int(np.sum(declared & truth)),
            tn=int(np.sum(~declared & ~truth)),
        )


@dataclass(frozen=True)
class Trial:
    """One replication at one ``tau``: counts and z-scale cutoff per method."""

    counts: dict
    cutoffs: dict
    fit_converged: bool = True


@dataclass
class StudySummary:
    """Mean and standard deviation of each error kind per ``(method, tau)``.

    ``stats[(method, tau)][kind] == (mean, sd)``; ``sd`` uses ``ddof=1`` and
    is 0 for a single replication.
    """

    config: StudyConfig
    stats: dict = field(default_factory=dict)
    fit_failures: dict = field(default_factory=dict)

    def mean(self, method, tau, kind):
        return self.stats[(method, float(tau))][kind][0]

    def sd(self, method, tau, kind):
        return self.stats[(method, float(tau))][kind][1]


def trial_seed(master_seed, rep_index):
    """Stable 32-bit seed for one replication."""
    ss = np.random.SeedSequence([int(master_seed), int(rep_index)])
    return int(ss.generate_state(1)[0])


def _z_grid(z, tau):
    hi = max(float(z[-1]), tau) + 10.0
    lo = min(float(z[0]), 0.0) - 1.0
    return np.arange(lo, hi + GRID_STEP, GRID_STEP)


def run_trial(m, cfg, rep_index):
    ls = sample(m, cfg.d, trial_seed(cfg.master_seed, rep_index))
    z, truth = ls.z, ls.is_alternative
    counts, cutoffs = {}, {}
    converged = True

    curves = {}

    def curve(oracle):
        if oracle not in curves:
            if oracle:
                fit = oracle_fit(m)
            else:
                nonlocal converged
                fit = fit_mixture(z)
                converged = fit.converged
            curves[oracle] = local_fdr_curve(fit, _z_grid(z, m.tau))
        return curves[oracle]

    for method in cfg.methods:
        if method == "HC":
            res = empirical_hc_threshold(PValueSample(p_value(z[::-1])), cfg.search_fraction)
            declared = p_value(z) < res.threshold
            # z above the cutoff <=> p below the HC threshold
            cutoffs[method] = normal.isf(res.threshold)
        else:
            oracle = method.endswith("_oracle") or cfg.fdr_mode == "oracle"
            if oracle and m.epsilon == 1.0:
                cut = -math.inf
            elif oracle and m.tau == 0.0:
                cut = math.inf
            else:
                cut = cutoff_from_curve(curve(oracle), FDR_LEVELS[method])
            cutoffs[method] = cut
            declared = z > cut
        counts[method] = ErrorCounts.tally(declared, truth)
    return Trial(counts=counts, cutoffs=cutoffs, fit_converged=converged)


def _run_replication(args):
    cfg, rep_index = args
    return [run_trial(RwModel(cfg.epsilon, tau), cfg, rep_index) for tau in cfg.tau_list]


def run_study(cfg, jobs=1):
    """Run ``cfg.replications`` replications and summarize the error counts.

    ``jobs > 1`` fans replications out to worker processes; the summary is
    identical to the serial one.
    """
    tasks = [(cfg, rep) for rep in range(1, cfg.replications + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_replication, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_run_replication(t) for t in tasks]

    summary = StudySummary(config=cfg)
    for j, tau in enumerate(cfg.tau_list):
        trials = [rep[j] for rep in results]
        summary.fit_failures[tau] = sum(not t.fit_converged for t in trials)
        for method in cfg.methods:
            table = np.array(
                [[getattr(t.counts[method], k) for k in ERROR_KINDS] for t in trials], dtype=float
            )
            means = table.mean(axis=0)
            sds = table.std(axis=0, ddof=1) if len(trials) > 1 else np.zeros(len(ERROR_KINDS))
            summary.stats[(method, tau)] = {
                k: (float(mu), float(sd)) for k, mu, sd in zip(ERROR_KINDS, means, sds)
            }
    return summary


def emit_error_table(summary):
    """Flatten a summary into rows of ``method, tau, error, mean, sd``."""
    rows = []
    for method in summary.config.methods:
        for tau in summary.config.tau_list:
            stats = summary.stats[(method, tau)]
            for kind in ERROR_KINDS:
                mean, sd = stats[kind]
                rows.append({"method": method, "tau": tau, "error": kind, "mean": mean, "sd": sd})
    return rows
