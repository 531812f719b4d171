"""Population-level decision thresholds of the RW model on the z-scale.

All thresholds are upper-tail cutoffs: a feature is called non-null when its
z-score exceeds the threshold.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import normal
from .model import RwModel, alt_sf, null_sf, null_density, alt_density, mix_sf

GRID_STEP = 1e-3
GRID_LO = -2.0
GRID_HI_OFFSET = 12.0
REFINE_TOL = 1e-7
PLATEAU_RTOL = 1e-9

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class NoThresholdError(ValueError):
    """Raised when a model has no meaningful threshold (``tau == 0``)."""


class UndefinedPointError(ValueError):
    """Raised when the HC objective is evaluated where ``S(z)`` is 0 or 1."""


@dataclass(frozen=True)
class HcOptimum:
    """Maximizer of the population HC objective.

    ``multiple_maxima`` is set when another, separated grid point attains the
    maximum within relative tolerance; ``z`` is then the smallest of them.
    """

    z: float
    objective: float
    multiple_maxima: bool = False


@dataclass(frozen=True)
class ThresholdSet:
    z_ks: float
    z_hc: float
    z_cb: float
    fdr_cutoffs: dict = field(default_factory=dict)
    hc_multiple_maxima: bool = False


def _require_signal(m):
    if m.tau == 0.0:
        raise NoThresholdError("tau = 0: null and alternative coincide, no threshold exists")


def ks_threshold(m):
    """Maximizer of ``|F_A - F_0|``, the point where both densities cross."""
    _require_signal(m)
    return m.tau / 2.0


def cb_threshold(m):
    """Class boundary where the local fdr equals 1/2.

    ``+inf`` for ``epsilon = 0`` (nothing is ever called non-null) and
    ``-inf`` for ``epsilon = 1``.
    """
    _require_signal(m)
    eps = m.epsilon
    if eps == 0.0:
        return math.inf
    if eps == 1.0:
        return -math.inf
    return m.tau / 2.0 + (math.log1p(-eps) - math.log(eps)) / m.tau


def fdr_cutoff(m, q):
    """z at which the oracle local fdr equals ``q``.

    Solves ``(1 - eps) f0(z) / f(z) = q`` in closed form. Written as an offset
    from the class boundary so that ``q = 0.5`` returns it bit-for-bit.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"fdr level must lie in (0, 1), got {q}")
    if m.epsilon == 1.0:
        raise ValueError("epsilon = 1: local fdr is identically 0")
    z_cb = cb_threshold(m)
    if math.isinf(z_cb):
        return z_cb
    return z_cb + (math.log1p(-q) - math.log(q)) / m.tau


def _objective(z, m):
    # NaN where the objective is undefined
    z = np.asarray(z, dtype=float)
    s0 = np.asarray(null_sf(z))
    sa = np.asarray(alt_sf(z, m.tau))
    s = (1.0 - m.epsilon) * s0 + m.epsilon * sa
    # lower-tail mass computed directly, not as 1 - s
    f = (1.0 - m.epsilon) * np.asarray(normal.cdf(z)) + m.epsilon * np.asarray(normal.cdf(z - m.tau))
    denom = s * f
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(denom > 0.0, (sa - s0) ** 2 / denom, np.nan)
    return out


def population_hc_objective(z, m):
    """Squared population HC objective ``(S_A - S_0)^2 / (S (1 - S))``.

    ``S``, ``S_0`` and ``S_A`` are the upper-tail survival functions of the
    mixture, null and alternative. The objective keeps this form under any
    monotone change of variables, so the z-scale maximizer maps onto the
    p-value-scale one.
    """
    out = _objective(z, m)
    if np.any(np.isnan(out)):
        raise UndefinedPointError("HC objective undefined where S(z) is 0 or 1")
    return float(out) if out.ndim == 0 else out


def pvalue_hc_objective(x, m):
    """The same objective on the p-value scale, ``x = 1 - Phi(z)``.

    Here ``F_0(x) = x`` and ``F_A(x) = 1 - Phi(Phi^{-1}(1 - x) - tau)``.
    """
    x = np.asarray(x, dtype=float)
    fa = normal.sf(normal.isf(x) - m.tau)
    f = (1.0 - m.epsilon) * x + m.epsilon * fa
    # 1 - F on the p-scale equals the lower-tail mass on the z-scale
    z = normal.isf(x)
    one_minus_f = (1.0 - m.epsilon) * normal.cdf(z) + m.epsilon * normal.cdf(z - m.tau)
    out = (fa - x) ** 2 / (f * one_minus_f)
    return float(out) if out.ndim == 0 else out


def hc_stationarity_sides(z, m):
    """Both sides of the first-order condition for the HC maximizer.

    With survival functions in place of distribution functions::

        f0 {2 S(1-S) + (S_A - S_0)(1 - 2S) eta0}
            = fA {2 S(1-S) - (S_A - S_0)(1 - 2S)(1 - eta0)}
    """
    s0 = null_sf(z)
    sa = alt_sf(z, m.tau)
    s = mix_sf(z, m)
    one_minus_s = (1.0 - m.epsilon) * normal.cdf(z) + m.epsilon * normal.cdf(z - m.tau)
    if not (s > 0.0 and one_minus_s > 0.0):
        raise UndefinedPointError("stationarity condition undefined where S(z) is 0 or 1")
    eta0 = m.eta0
    diff = sa - s0
    var = 2.0 * s * one_minus_s
    lhs = null_density(z) * (var + diff * (one_minus_s - s) * eta0)
    rhs = alt_density(z, m.tau) * (var - diff * (one_minus_s - s) * (1.0 - eta0))
    return float(lhs), float(rhs)


def hc_stationarity_residual(z, m):
    """LHS - RHS of the stationarity condition; zero at interior extrema."""
    lhs, rhs = hc_stationarity_sides(z, m)
    return lhs - rhs


def golden_max(f, a, b, tol=REFINE_TOL):
    """Golden-section search for the maximum of a unimodal ``f`` on [a, b]."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            # ties move left so plateaus resolve to the smaller point
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def hc_maximize(m, step=GRID_STEP, tol=REFINE_TOL):
    """Global maximizer of the population HC objective.

    A grid scan over ``[-2, tau + 12]`` locates the best grid point; golden
    section search then refines within one grid step on either side.
    """
    _require_signal(m)
    lo, hi = GRID_LO, m.tau + GRID_HI_OFFSET
    n = int(round((hi - lo) / step)) + 1
    grid = np.linspace(lo, hi, n)
    vals = _objective(grid, m)
    vals = np.where(np.isnan(vals), -np.inf, vals)
    k = int(np.argmax(vals))
    vmax = vals[k]
    if not np.isfinite(vmax):
        raise UndefinedPointError("HC objective undefined on the whole search interval")

    # other local maxima that tie the best one
    inner = np.zeros(n, dtype=bool)
    inner[1:-1] = (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])
    inner[0] = vals[0] >= vals[1]
    inner[-1] = vals[-1] >= vals[-2]
    ties = np.flatnonzero(inner & (vals >= vmax * (1.0 - PLATEAU_RTOL)))
    ties = ties[np.abs(ties - k) > 2] if ties.size else ties
    multiple = ties.size > 0
    if multiple:
        k = int(min(k, ties.min()))

    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, n - 1)]
    z = golden_max(lambda t: float(_objective(t, m)), a, b, tol)
    return HcOptimum(z=float(z), objective=float(_objective(z, m)), multiple_maxima=multiple)


def hc_threshold(m):
    """Population HC threshold ``z^HC`` (see :func:`hc_maximize`)."""
    return hc_maximize(m).z


def threshold_set(m, q_levels=(0.2, 0.5, 0.8)):
    opt = hc_maximize(m)
    z_cb = cb_threshold(m)
    cutoffs = {}
    for q in q_levels:
        cutoffs[float(q)] = z_cb if q == 0.5 else fdr_cutoff(m, q)
    return ThresholdSet(
        z_ks=ks_threshold(m),
        z_hc=opt.z,
        z_cb=z_cb,
        fdr_cutoffs=cutoffs,
        hc_multiple_maxima=opt.multiple_maxima,
    )


def identification_tau(epsilon, delta_r=0.0, d=10_000):
    """Signal strength ``tau`` at ``r = beta + delta_r`` for sparsity ``epsilon``.

    For ``delta_r = 0`` this is ``sqrt(-2 log epsilon)`` independently of ``d``;
    ``d`` only converts the offset ``delta_r`` from r-units into tau.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if delta_r < 0.0:
        raise ValueError(f"delta_r must be >= 0, got {delta_r}")
    return math.sqrt(-2.0 * math.log(epsilon) + 2.0 * delta_r * math.log(d))


def hc_cb_ratio_at_boundary(epsilon, delta_r=0.0, d=10_000):
    """Ratio ``z^HC / z^CB`` on (or ``delta_r`` above) the identification boundary."""
    m = RwModel(epsilon, identification_tau(epsilon, delta_r, d))
    return hc_threshold(m) / cb_threshold(m)
