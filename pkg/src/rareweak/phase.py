"""Sparsity/strength coordinates ``(beta, r)`` and the RW phase diagram."""

import math
from dataclasses import dataclass

from .model import RwModel

REGIONS = ("undetectable", "detectable", "estimable", "recoverable")

# round-off from to_phase, e.g. eps = 0.01, d = 10^4 gives beta = 0.5 - 6e-17
BETA_TOL = 1e-12


@dataclass(frozen=True)
class PhaseCoords:
    beta: float
    r: float
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if self.r < 0.0:
            raise ValueError(f"r must be >= 0, got {self.r}")


@dataclass(frozen=True)
class Region:
    """Phase-space region of a point.

    ``label`` is None only for dense points (beta < 1/2) below the
    identification boundary, where detectability is not classified.
    """

    label: str
    on_boundary: bool = False
    dense: bool = False


def to_phase(m, d):
    """``beta = -log(eps)/log(d)``, ``r = (tau^2/2)/log(d)``."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if m.epsilon <= 0.0:
        raise ValueError("beta is undefined for epsilon = 0")
    logd = math.log(d)
    return PhaseCoords(beta=-math.log(m.epsilon) / logd, r=0.5 * m.tau**2 / logd, d=d)


def from_phase(c):
    logd = math.log(c.d)
    return RwModel(epsilon=math.exp(-c.beta * logd), tau=math.sqrt(2.0 * c.r * logd))


def _check_beta(beta, lo):
    if not lo - BETA_TOL <= beta <= 1.0 + BETA_TOL:
        raise ValueError(f"beta must lie in [{lo}, 1], got {beta}")
    return min(max(beta, lo), 1.0)


def detection_boundary(beta):
    beta = _check_beta(beta, 0.5)
    if beta <= 0.75:
        return beta - 0.5
    return (1.0 - math.sqrt(1.0 - beta)) ** 2


def identification_boundary(beta):
    return _check_beta(beta, 0.0)


def recovery_boundary(beta):
    beta = _check_beta(beta, 0.0)
    return (1.0 + math.sqrt(1.0 - beta)) ** 2


def classify_region(c):
    """Place ``c`` in one of the four regions; boundary points go to the upper one.

    For dense points (beta < 1/2) the detection boundary is not defined; such
    points are still compared with the identification and recovery
    boundaries and carry ``dense=True``.
    """
    beta, r = _check_beta(c.beta, 0.0), c.r
    dense = beta < 0.5 - BETA_TOL
    r_ident = identification_boundary(beta)
    r_recov = recovery_boundary(beta)
    if r >= r_recov:
        return Region("recoverable", on_boundary=r == r_recov, dense=dense)
    if r >= r_ident:
        return Region("estimable", on_boundary=r == r_ident, dense=dense)
    if dense:
        return Region(None, dense=True)
    r_detect = detection_boundary(beta)
    if r >= r_detect:
        return Region("detectable", on_boundary=r == r_detect)
    return Region("undetectable")
