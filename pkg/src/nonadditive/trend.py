"""Finite-horizon trend rules used for every bounded / vanishing verdict.

The rules look at a series at three sample points ``N/4, N/2, N`` and decide
whether its increments are contracting (bounded) or whether its normalized
values extrapolate to zero (vanishing).  All thresholds travel with the
verdict so reports never hide them.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import asdict, dataclass

import numpy as np

BOUNDED_RATIO = 0.75
BOUNDED_ABS_TOL = 1e-9
BOUNDED_REL_TOL = 0.02
VANISH_REL = 0.05
VANISH_ABS = 1e-6

_ACTIVE = {"bounded_ratio": BOUNDED_RATIO, "bounded_abs_tol": BOUNDED_ABS_TOL,
           "bounded_rel_tol": BOUNDED_REL_TOL,
           "vanish_rel": VANISH_REL, "vanish_abs": VANISH_ABS}


def active_thresholds() -> dict:
    return dict(_ACTIVE)


@contextmanager
def thresholds(**overrides):
    """Temporarily replace the default thresholds of the trend rules."""
    bad = set(overrides) - set(_ACTIVE)
    if bad:
        raise KeyError(f"unknown threshold(s): {sorted(bad)}")
    for key, v in overrides.items():
        if not v > 0:
            raise ValueError(f"threshold {key} must be positive")
    saved = dict(_ACTIVE)
    _ACTIVE.update({k: float(v) for k, v in overrides.items()})
    try:
        yield active_thresholds()
    finally:
        _ACTIVE.clear()
        _ACTIVE.update(saved)


@dataclass
class TrendVerdict:
    rule: str
    holds: bool
    samples: list
    statistic: float
    threshold: float
    abs_tol: float

    def as_dict(self):
        return asdict(self)


def _sample_points(N):
    if N < 4:
        raise ValueError("trend rules need a horizon of at least 4")
    return [N // 4, N // 2, N]


def running_max(series):
    return np.maximum.accumulate(np.asarray(series, dtype=float))


def bounded_trend(series, ratio=None, abs_tol=None, rel_tol=None) -> TrendVerdict:
    """Running-max increments over ``[N/4, N/2]`` and ``[N/2, N]`` must contract.

    ``series[i]`` is the value at ``n = i + 1``.  A growth law ``n**a`` gives
    an increment ratio of ``2**a``, so the default ratio accepts decay
    faster than about ``n**-0.4`` and rejects logarithmic or faster growth.
    A late increment below ``rel_tol`` times the final running max counts as
    saturation (a plateau reached by one last jump), not growth.
    """
    ratio = _ACTIVE["bounded_ratio"] if ratio is None else ratio
    abs_tol = _ACTIVE["bounded_abs_tol"] if abs_tol is None else abs_tol
    rel_tol = _ACTIVE["bounded_rel_tol"] if rel_tol is None else rel_tol
    R = running_max(series)
    a, b, c = (R[i - 1] for i in _sample_points(len(R)))
    d1, d2 = b - a, c - b
    holds = bool(d2 <= ratio * d1 + abs_tol + rel_tol * abs(c))
    stat = float(d2 / d1) if d1 > 0 else (0.0 if d2 <= abs_tol else float("inf"))
    return TrendVerdict("bounded-increments", holds, [float(a), float(b), float(c)], stat,
                        ratio, abs_tol)


def vanishing_trend(series, rel=None, abs_tol=None, normalize=True) -> TrendVerdict:
    """Decide whether ``series_n / n`` tends to zero.

    The running max of the series divided by ``n`` is sampled at ``N/4, N/2, N``
    and extrapolated with Aitken's delta-squared step (exact for ``c n**a``
    with ``a < 1`` sampled at doubling ``n``).  The limit estimate is compared
    with the last sample.  With ``normalize=False`` the series is taken as
    already divided by ``n``.
    """
    rel = _ACTIVE["vanish_rel"] if rel is None else rel
    abs_tol = _ACTIVE["vanish_abs"] if abs_tol is None else abs_tol
    R = running_max(series) if normalize else np.asarray(series, dtype=float)
    N = len(R)
    idx = _sample_points(N)
    e = [float(R[i - 1] / i) if normalize else float(R[i - 1]) for i in idx]
    d1, d2 = e[0] - e[1], e[1] - e[2]
    limit = e[2]
    if d1 > d2 > 0:
        limit = e[2] - d2 * d2 / (d1 - d2)
    limit = max(limit, 0.0)
    holds = bool(limit <= rel * e[2] or limit <= abs_tol)
    return TrendVerdict("aitken-vanishing", holds, e, limit, rel, abs_tol)


def loglog_slope(series, tail=0.5):
    """Least-squares slope of ``log series`` against ``log n`` over the last part."""
    y = np.asarray(series, dtype=float)
    n = np.arange(1, len(y) + 1)
    start = int(len(y) * (1 - tail))
    mask = (n > start) & (y > 0)
    if mask.sum() < 2:
        return float("-inf")
    return float(np.polyfit(np.log(n[mask]), np.log(y[mask]), 1)[0])


def flat_last_quartile(series, abs_tol=1e-9, rel=1e-9):
    """True when the running max does not move over the last quarter."""
    R = running_max(series)
    q = len(R) - max(1, len(R) // 4)
    return bool(R[-1] - R[q - 1] <= abs_tol + rel * abs(R[-1]))
