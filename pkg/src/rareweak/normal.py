"""Standard normal density, distribution and quantile functions.

The distribution functions go through the complementary error function so
that both tails keep full relative precision; ``1 - cdf(z)`` is never formed.
"""

import math

import numpy as np
from scipy import special

SQRT2 = math.sqrt(2.0)
INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _out(x):
    # scalars in, Python floats out
    return float(x) if np.ndim(x) == 0 else x


def pdf(z):
    z = np.asarray(z, dtype=float)
    return _out(INV_SQRT_2PI * np.exp(-0.5 * z * z))


def cdf(z):
    z = np.asarray(z, dtype=float)
    return _out(0.5 * special.erfc(-z / SQRT2))


def sf(z):
    """Upper tail ``P(Z > z)``, accurate far into the right tail."""
    z = np.asarray(z, dtype=float)
    return _out(0.5 * special.erfc(z / SQRT2))


def ppf(q):
    q = np.asarray(q, dtype=float)
    return _out(special.ndtri(q))


def isf(p):
    """Inverse of :func:`sf`, i.e. the z-score whose upper-tail p-value is ``p``."""
    p = np.asarray(p, dtype=float)
    return _out(-special.ndtri(p))


def ppf_bracketed(q, lo=-37.0, xtol=1e-12):
    """Scalar quantile by bisection-safe root finding on :func:`cdf`.

    Slow; kept as an independent cross-check of :func:`ppf`.
    """
    from scipy.optimize import brentq

    if q <= 0.0:
        return -math.inf
    if q >= 1.0:
        return math.inf
    if q < 0.5:
        # root-find on the lower tail directly, where cdf has relative precision
        return brentq(lambda z: math.log(cdf(z)) - math.log(q), lo, 0.0, xtol=xtol)
    return -brentq(lambda z: math.log(cdf(z)) - math.log(1.0 - q), lo, 0.0, xtol=xtol)
