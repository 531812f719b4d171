"""The rare-weak (RW) normal mixture ``(1 - eps) N(0, 1) + eps N(tau, 1)``."""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import normal


@dataclass(frozen=True)
class RwModel:
    """Two-component normal mixture with null proportion ``1 - epsilon``.

    Parameters
    ----------
    epsilon : float
        Fraction of non-null features, in [0, 1].
    tau : float
        Mean of the alternative component, >= 0.
    """

    epsilon: float
    tau: float

    def __post_init__(self):
        eps, tau = float(self.epsilon), float(self.tau)
        if not (math.isfinite(eps) and math.isfinite(tau)):
            raise ValueError(f"model parameters must be finite, got eps={eps}, tau={tau}")
        if not 0.0 <= eps <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {eps}")
        if tau < 0.0:
            raise ValueError(f"tau must be non-negative, got {tau}")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "tau", tau)

    @property
    def eta0(self):
        """Null proportion."""
        return 1.0 - self.epsilon


@dataclass(frozen=True)
class LabeledSample:
    """Sorted z-scores with ground-truth labels (``True`` = alternative)."""

    z: np.ndarray
    is_alternative: np.ndarray
    seed: int

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        lab = np.asarray(self.is_alternative, dtype=bool)
        if z.ndim != 1 or z.shape != lab.shape or z.size < 1:
            raise ValueError("z and is_alternative must be equal-length 1-d arrays, d >= 1")
        z.setflags(write=False)
        lab.setflags(write=False)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "is_alternative", lab)

    @property
    def d(self):
        return self.z.size

    def __eq__(self, other):
        if not isinstance(other, LabeledSample):
            return NotImplemented
        return (
            self.seed == other.seed
            and np.array_equal(self.z, other.z)
            and np.array_equal(self.is_alternative, other.is_alternative)
        )

    __hash__ = None


def null_density(z):
    return normal.pdf(z)


def alt_density(z, tau):
    return normal.pdf(np.asarray(z, dtype=float) - tau)


def mix_density(z, m):
    return (1.0 - m.epsilon) * null_density(z) + m.epsilon * alt_density(z, m.tau)


def null_cdf(z):
    return normal.cdf(z)


def alt_cdf(z, tau):
    return normal.cdf(np.asarray(z, dtype=float) - tau)


def mix_cdf(z, m):
    return (1.0 - m.epsilon) * null_cdf(z) + m.epsilon * alt_cdf(z, m.tau)


def null_sf(z):
    return normal.sf(z)


def alt_sf(z, tau):
    return normal.sf(np.asarray(z, dtype=float) - tau)


def mix_sf(z, m):
    return (1.0 - m.epsilon) * null_sf(z) + m.epsilon * alt_sf(z, m.tau)


def p_value(z):
    """One-sided upper-tail p-value ``1 - Phi(z)``."""
    return null_sf(z)


def oracle_local_fdr(z, m):
    """Posterior null probability ``(1 - eps) f0(z) / f(z)`` under the true model.

    Evaluated as a logistic function of the log density ratio, which stays
    well defined where both densities underflow.
    """
    eps, tau = m.epsilon, m.tau
    z = np.asarray(z, dtype=float)
    if eps in (0.0, 1.0):
        out = np.full(z.shape, 1.0 - eps)
        return float(out) if out.ndim == 0 else out
    # log(eps fA / ((1-eps) f0)) = tau z - tau^2/2 + log(eps/(1-eps))
    log_odds_alt = tau * z - 0.5 * tau * tau + math.log(eps) - math.log1p(-eps)
    out = special.expit(-log_odds_alt)
    return float(out) if out.ndim == 0 else out


def sample(m, d, seed):
    """Draw ``d`` labelled z-scores from ``m``; deterministic given ``seed``.

    Labels and noise are drawn from separate uniform/normal streams of one
    generator, so models that differ only in ``tau`` share their labels and
    noise for the same seed.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    rng = np.random.default_rng(seed)
    is_alt = rng.random(d) < m.epsilon
    z = rng.standard_normal(d) + m.tau * is_alt
    order = np.argsort(z, kind="stable")
    return LabeledSample(z=z[order], is_alternative=is_alt[order], seed=seed)


def tau_from_two_class(n, mu0):
    """Alternative mean ``sqrt(n) * mu0`` induced by a balanced two-class design."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.sqrt(n) * mu0
