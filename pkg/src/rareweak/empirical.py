"""Empirical Higher Criticism on a finite set of p-values."""

import math
from dataclasses import dataclass

import numpy as np


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class PValueSample:
    """p-values sorted ascending. Build with :meth:`from_values`."""

    p_sorted: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p_sorted, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("need a non-empty 1-d array of p-values")
        if np.any(~np.isfinite(p)) or np.any((p < 0.0) | (p > 1.0)):
            raise ValueError("p-values must lie in [0, 1]")
        if np.any(np.diff(p) < 0.0):
            raise ValueError("p_sorted must be ascending; use PValueSample.from_values")
        p.setflags(write=False)
        object.__setattr__(self, "p_sorted", p)

    @classmethod
    def from_values(cls, values):
        return cls(np.sort(np.asarray(values, dtype=float)))

    @property
    def d(self):
        return self.p_sorted.size


@dataclass(frozen=True)
class HcResult:
    """Outcome of empirical HC thresholding.

    ``argmax_index`` is a 0-based position into both ``objective_values`` and
    the sorted p-values, so ``threshold == p_sorted[argmax_index]``.
    """

    threshold: float
    hc_star: float
    argmax_index: int
    objective_values: np.ndarray


def ecdf(s, x):
    """Right-continuous empirical distribution function ``#{p_i <= x} / d``."""
    return np.searchsorted(s.p_sorted, x, side="right") / s.d


def hc_objective_at_order_stats(s):
    """HC objective ``|i/d - p_(i)| / sqrt((i/d)(1 - i/d)/d)`` for i = 1..d-1.

    The last order statistic is left out since the denominator vanishes there.
    """
    d = s.d
    if d < 2:
        raise InsufficientDataError(f"need at least 2 p-values, got {d}")
    frac = np.arange(1, d) / d
    return np.abs(frac - s.p_sorted[:-1]) / np.sqrt(frac * (1.0 - frac) / d)


def empirical_hc_threshold(s, search_fraction=0.5):
    """Maximize the HC objective over the smallest ``search_fraction`` of p-values.

    Parameters
    ----------
    s : PValueSample
    search_fraction : float
        The maximum is taken over order statistics ``i <= floor(search_fraction * d)``
        (and ``i <= d - 1``). Use 1.0 to search everything.

    Returns
    -------
    HcResult
        Ties go to the smallest index.
    """
    if not 0.0 < search_fraction <= 1.0:
        raise ValueError(f"search_fraction must lie in (0, 1], got {search_fraction}")
    values = hc_objective_at_order_stats(s)
    stop = min(max(math.floor(search_fraction * s.d), 1), s.d - 1)
    k = int(np.argmax(values[:stop]))
    return HcResult(
        threshold=float(s.p_sorted[k]),
        hc_star=float(values[k]),
        argmax_index=k,
        objective_values=values,
    )


def classify(p, threshold):
    """Flag p-values strictly below ``threshold`` as significant.

    Accepts a :class:`PValueSample` or any array of p-values (order preserved).
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [0, 1], got {threshold}")
    p = p.p_sorted if isinstance(p, PValueSample) else np.asarray(p, dtype=float)
    return p < threshold
