"""Tail-area and local false discovery rates, and fdr-based cutoffs.

Local fdr is estimated by fitting ``eta0 N(0, 1) + (1 - eta0) N(tau, 1)`` with
the null held fixed. All curves are on the z-scale, oriented to the upper
tail: small fdr means large z.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import isotonic_regression

from . import normal
from .model import RwModel, oracle_local_fdr

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class MixtureFit:
    eta0_hat: float
    tau_hat: float
    loglik: float
    iterations: int
    converged: bool
    loglik_trace: tuple = field(default=(), repr=False)

    def as_model(self):
        return RwModel(1.0 - self.eta0_hat, self.tau_hat)


@dataclass(frozen=True)
class FdrCurves:
    z_grid: np.ndarray
    local_fdr: np.ndarray
    tail_fdr: np.ndarray
    local_fndr: np.ndarray
    tail_fndr: np.ndarray
    raw_local_fdr: np.ndarray = field(repr=False, default=None)


def bh_tail_fdr(s, eta0=1.0):
    """Benjamini-Hochberg estimate ``eta0 * p_(i) * d / i`` at each order statistic.

    The result is made nondecreasing in ``i`` by a running minimum taken from
    the largest index down, and capped at 1.
    """
    if not 0.0 < eta0 <= 1.0:
        raise ValueError(f"eta0 must lie in (0, 1], got {eta0}")
    p = s.p_sorted
    d = p.size
    raw = eta0 * p * d / np.arange(1, d + 1)
    adjusted = np.minimum.accumulate(raw[::-1])[::-1]
    return np.minimum(adjusted, 1.0)


def _loglik(z, eta0, tau):
    # log of eta0 phi(z) + (1 - eta0) phi(z - tau), stable in the tails
    with np.errstate(divide="ignore"):
        a = math.log(eta0) - 0.5 * z * z if eta0 > 0 else np.full_like(z, -np.inf)
        b = (
            math.log1p(-eta0) - 0.5 * (z - tau) ** 2
            if eta0 < 1
            else np.full_like(z, -np.inf)
        )
    return np.logaddexp(a, b) - LOG_SQRT_2PI


def fit_mixture(z, tol=1e-8, max_iter=500):
    """EM fit of the null proportion and alternative mean, null fixed at N(0, 1).

    Starts from ``eta0 = 0.9`` and ``tau = max(1, 90th percentile of z)``.
    Stops when the relative change of the log-likelihood drops below ``tol``.
    ``tau`` is constrained to be non-negative; with no alternative weight left
    it keeps its previous value.
    """
    z = np.asarray(z, dtype=float)
    if z.size < 10:
        raise ValueError(f"need at least 10 z-scores to fit the mixture, got {z.size}")
    eta0 = 0.9
    tau = max(1.0, float(np.percentile(z, 90)))
    ll = float(np.sum(_loglik(z, eta0, tau)))
    trace = [ll]
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        # E-step: posterior alternative probabilities
        w = 1.0 - np.asarray(oracle_local_fdr(z, RwModel(1.0 - eta0, tau)))
        # M-step
        wsum = float(w.sum())
        eta0 = 1.0 - wsum / z.size
        if wsum > 0.0:
            tau = max(0.0, float(np.dot(w, z)) / wsum)
        new_ll = float(np.sum(_loglik(z, eta0, tau)))
        trace.append(new_ll)
        change = abs(new_ll - ll) / max(abs(ll), 1e-300)
        ll = new_ll
        if change < tol:
            converged = True
            break
    return MixtureFit(
        eta0_hat=eta0,
        tau_hat=tau,
        loglik=ll,
        iterations=it,
        converged=converged,
        loglik_trace=tuple(trace),
    )


def oracle_fit(m):
    """Wrap the true model as a fit, for oracle-mode curves."""
    return MixtureFit(eta0_hat=m.eta0, tau_hat=m.tau, loglik=math.nan, iterations=0, converged=True)


def local_fdr_curve(fit, z_grid):
    """Local and tail-area fdr/fndr of a fitted mixture on an ascending z-grid.

    ``tail_fdr`` is the null share among cases above z, ``tail_fndr`` the
    alternative share among cases at or below z. The local fdr is forced to
    be nonincreasing in z by pool-adjacent-violators.
    """
    z = np.asarray(z_grid, dtype=float)
    if np.any(np.diff(z) <= 0.0):
        raise ValueError("z_grid must be strictly ascending")
    m = fit.as_model()
    raw = np.asarray(oracle_local_fdr(z, m), dtype=float)
    local = isotonic_regression(raw, increasing=False).x
    eta0, eps, tau = m.eta0, m.epsilon, m.tau

    s0 = normal.sf(z)
    sa = normal.sf(z - tau)
    s = eta0 * s0 + eps * sa
    f0 = normal.cdf(z)
    fa = normal.cdf(z - tau)
    f = eta0 * f0 + eps * fa
    with np.errstate(divide="ignore", invalid="ignore"):
        tail_fdr = np.where(s > 0.0, eta0 * s0 / s, _tail_limit(z, m, upper=True))
        tail_fndr = np.where(f > 0.0, eps * fa / f, _tail_limit(z, m, upper=False))
    return FdrCurves(
        z_grid=z,
        local_fdr=local,
        tail_fdr=tail_fdr,
        local_fndr=1.0 - local,
        tail_fndr=tail_fndr,
        raw_local_fdr=raw,
    )


def _tail_limit(z, m, upper):
    # where a tail underflows, the conditional share tends to the local value
    fdr = np.asarray(oracle_local_fdr(z, m), dtype=float)
    return fdr if upper else 1.0 - fdr


def cutoff_from_curve(c, level):
    """Smallest z with ``local_fdr(z) <= level``, linearly interpolated.

    Returns ``inf`` when the curve never reaches ``level`` on the grid.
    """
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    fdr = c.local_fdr
    hit = np.flatnonzero(fdr <= level)
    if hit.size == 0:
        return math.inf
    k = int(hit[0])
    if k == 0:
        return float(c.z_grid[0])
    z0, z1 = c.z_grid[k - 1], c.z_grid[k]
    f0, f1 = fdr[k - 1], fdr[k]
    if f0 == f1:
        return float(z1)
    return float(z0 + (f0 - level) * (z1 - z0) / (f0 - f1))
