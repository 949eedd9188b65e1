"""Regularity estimators for potential sequences and the three-condition battery.

All quantities are exact maxima over word tables up to a horizon; the trend
rules in :mod:`nonadditive.trend` turn the resulting series into verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .potentials import (
    PotentialSequence,
    cylinder_extrema_table,
    difference,
    expand_table,
    table_at,
)
from .shift import (
    TABLE_BUDGET,
    enumerate_periodic_points,
    index_word,
    orbit,
    periodic_prefixes,
    prefix_array,
    transitive_point,
    word_str,
)
from .trend import TrendVerdict, bounded_trend, loglog_slope, vanishing_trend

PRECONDITION_HORIZON = 14
PERTURBATION_TOL = 1e-9


@dataclass
class AlmostAdditivityReport:
    C_hat: float
    N: int
    argmax: tuple  # (m, n, word) attaining C_hat; word is "" for constant sequences
    series: list  # C_hat restricted to m + n <= t, for t = 1..N (t = 1 has no split)

    def as_dict(self):
        m, n, w = self.argmax
        return {"C_hat": self.C_hat, "N": self.N, "argmax": {"m": m, "n": n, "word": w},
                "series": self.series}


def _tables(F, N, budget):
    return [None] + [t for _, t in F.tables(N, budget)]


def almost_additivity_constant(F: PotentialSequence, N: int, budget: int = TABLE_BUDGET,
                               tables=None) -> AlmostAdditivityReport:
    """Exact ``max |f_{m+n} - f_n - f_m o sigma^n|`` over ``m + n <= N``.

    Ties in the maximum go to the lexicographically smallest ``(m, n, word)``.
    """
    k = F.k
    tabs = tables if tables is not None else _tables(F, N, budget)
    best, arg = 0.0, (0, 0, "")
    series = [0.0]
    for t in range(2, N + 1):
        if F.constant_in_x:
            for n in range(1, t):
                m = t - n
                v = abs(tabs[t][0] - tabs[n][0] - tabs[m][0])
                if v > best:
                    best, arg = float(v), (m, n, "")
            series.append(best)
            continue
        splits = [(t - n, n) for n in range(1, t)]
        W = max(max(F.window(t), F.window(n), n + F.window(m)) for m, n in splits)
        ft = table_at(F, t, W, tabs[t], budget)
        ranks = np.arange(k**W, dtype=np.int64)
        for m, n in sorted(splits):
            fn = expand_table(tabs[n], k, W - F.window(n))
            wm = F.window(m)
            fm = tabs[m][(ranks // k ** (W - n - wm)) % k**wm]
            defect = np.abs(ft - fn - fm)
            i = int(np.argmax(defect))
            v = float(defect[i])
            key = (m, n, word_str(index_word(i, k, W)))
            if v > best or (v == best and v > 0 and key < arg):
                best, arg = v, key
        series.append(best)
    return AlmostAdditivityReport(best, N, arg, series)


@dataclass
class VariationReport:
    s: int  # cylinder depth: f_n compared on (n + s)-cylinders
    gamma: list
    M_hat: float
    tempered_slope: float  # least-squares slope of gamma_n / n against n over the last half
    bounded: TrendVerdict
    tempered: TrendVerdict

    def as_dict(self):
        return {"s": self.s, "epsilon": 2.0 ** -(self.s + 1), "gamma": self.gamma,
                "M_hat": self.M_hat, "tempered_slope": self.tempered_slope,
                "bounded": self.bounded.as_dict(), "tempered": self.tempered.as_dict()}


def _gamma(F, n, s, table, budget):
    if F.window(n) <= n + s:
        return 0.0
    lo, hi = cylinder_extrema_table(F, n, n + s, table, budget)
    return float(np.max(hi - lo))


def variation(F: PotentialSequence, s: int, N: int, budget: int = TABLE_BUDGET,
              tables=None) -> VariationReport:
    """``gamma_n = max`` spread of ``f_n`` over ``(n + s)``-cylinders, ``n <= N``.

    Two points lie in a common ``(n + s)``-cylinder exactly when their Bowen
    distance ``d_n`` is below ``2 ** -(s + 1)``.
    """
    if s < 0:
        raise ValueError("depth must be nonnegative")
    tabs = tables if tables is not None else _tables(F, N, budget)
    gam = [_gamma(F, n, s, tabs[n], budget) for n in range(1, N + 1)]
    ratio = np.array(gam) / np.arange(1, N + 1)
    half = N // 2
    xs = np.arange(half + 1, N + 1)
    slope = float(np.polyfit(xs, ratio[half:], 1)[0]) if len(xs) >= 2 else 0.0
    return VariationReport(s, gam, float(max(gam)), slope, bounded_trend(gam),
                           vanishing_trend(gam))


def walters_check(F: PotentialSequence, N: int, s_max: int = None,
                  budget: int = TABLE_BUDGET) -> dict:
    """``s -> max_{n <= N} gamma_n`` for depths ``0..s_max``."""
    tabs = _tables(F, N, budget)
    if s_max is None:
        s_max = max(F.window(n) - n for n in range(1, N + 1))
        s_max = max(s_max, 0) + 1
    return {s: max(_gamma(F, n, s, tabs[n], budget) for n in range(1, N + 1))
            for s in range(0, s_max + 1)}


@dataclass
class BatteryReport:
    N: int
    P: int
    L: int
    sup_norms: list  # ||g_n|| for n = 1..N
    cond1_series: list  # ||g_n|| / n
    cond1: TrendVerdict
    cond2_bound: float
    cond2: TrendVerdict
    K_hat: float  # periodic bound over multiples of the primitive period
    K_hat_all_n: float  # same orbits, every n <= N
    cond3_series: list
    cond3: TrendVerdict
    C_hat: float
    M_hat: float
    precondition_horizon: int
    almost_additive: TrendVerdict
    bounded_variation: TrendVerdict
    K_prime: float
    global_bound: float  # 2 K' + C_hat
    transitive_length: int
    verdict: str
    flags: dict = field(default_factory=dict)

    def as_dict(self):
        out = dict(self.__dict__)
        for key in ("cond1", "cond2", "cond3", "almost_additive", "bounded_variation"):
            out[key] = getattr(self, key).as_dict()
        return out


def _periodic_data(k, P, budget):
    """Orbit points of primitive period ``<= P`` with their periods."""
    pts, periods = [], []
    for p, q in enumerate_periodic_points(k, P, budget):
        for x in orbit(p):
            pts.append(x)
            periods.append(q)
    return pts, np.asarray(periods)


def bou_battery(G: PotentialSequence, N: int = 24, P: int = 12, L: int = 4, s: int = 0,
                budget: int = TABLE_BUDGET, precondition_horizon: int = PRECONDITION_HORIZON
                ) -> BatteryReport:
    """Evaluate the three equivalent boundedness conditions for ``G`` up to ``N``.

    cond1: ``||g_n|| / n -> 0``; cond2: ``sup ||g_n|| < inf``; cond3: periodic
    values ``|g_n(p)|`` with ``sigma^n p = p`` bounded.  Almost additivity and
    bounded variation are checked at ``min(N, precondition_horizon)``; only
    when both are confirmed does a disagreement between the three flags count
    as inconsistent with the theorem.
    """
    k = G.k
    pts, periods = _periodic_data(k, P, budget)
    Wmax = max(G.window(n) for n in range(1, N + 1))
    prefixes = periodic_prefixes(pts, Wmax)

    sup_norms, mult_series, all_series = [], [], []
    tabs = [None]
    h = min(N, precondition_horizon)
    for n, tab in G.tables(N, budget):
        if n <= h:
            tabs.append(tab)
        sup_norms.append(float(np.max(np.abs(tab))))
        W = G.window(n)
        ranks = prefixes[:, :W] @ (k ** np.arange(W - 1, -1, -1, dtype=np.int64))
        vals = np.abs(tab[ranks])
        mult = n % periods == 0
        mult_series.append(float(vals[mult].max()) if mult.any() else 0.0)
        all_series.append(float(vals.max()))

    cond1 = vanishing_trend(sup_norms)
    cond2 = bounded_trend(sup_norms)
    cond3_series = list(np.maximum.accumulate(mult_series))
    cond3 = bounded_trend(mult_series)

    aa = almost_additivity_constant(G, h, budget, tables=tabs)
    var = variation(G, s, h, budget, tables=tabs)
    aa_trend = bounded_trend(aa.series) if h >= 4 else bounded_trend([aa.C_hat] * 4)
    var_trend = var.bounded

    omega = transitive_point(k, L)
    ell = len(omega.preperiod)
    orbit_vals = [abs(G.eval_words(prefix_array(omega, G.window(j))[None, :], j)[0])
                  for j in range(1, ell + 1)]
    K_hat = float(max(mult_series))
    K_prime = float(max(orbit_vals)) + var.M_hat + K_hat + aa.C_hat

    flags = {"cond1": cond1.holds, "cond2": cond2.holds, "cond3": cond3.holds}
    if not aa_trend.holds:
        verdict = "not-almost-additive"
    elif not var_trend.holds:
        verdict = "unbounded-variation"
    elif len(set(flags.values())) == 1:
        verdict = "consistent"
    else:
        verdict = "inconsistent-with-theorem"
    flags["envelope_holds"] = bool(max(sup_norms) <= 2 * K_prime + aa.C_hat + 1e-9)

    return BatteryReport(
        N=N, P=P, L=L, sup_norms=sup_norms,
        cond1_series=[v / n for n, v in enumerate(sup_norms, start=1)], cond1=cond1,
        cond2_bound=float(max(sup_norms)), cond2=cond2,
        K_hat=K_hat, K_hat_all_n=float(max(all_series)), cond3_series=cond3_series,
        cond3=cond3, C_hat=aa.C_hat, M_hat=var.M_hat, precondition_horizon=h,
        almost_additive=aa_trend, bounded_variation=var_trend, K_prime=K_prime,
        global_bound=2 * K_prime + aa.C_hat, transitive_length=ell, verdict=verdict,
        flags=flags)


@dataclass
class EquivalenceReport:
    e: list  # (1/n) ||f_n - g_n||
    sup_diff: float
    diffs: list  # ||f_n - g_n||
    physically_equivalent: TrendVerdict
    uniformly_bounded: TrendVerdict
    loglog_slope: float

    def as_dict(self):
        out = dict(self.__dict__)
        out["physically_equivalent"] = self.physically_equivalent.as_dict()
        out["uniformly_bounded"] = self.uniformly_bounded.as_dict()
        return out


def difference_norms(F, G, N, budget=TABLE_BUDGET):
    D = difference(F, G)
    return [float(np.max(np.abs(t))) for _, t in D.tables(N, budget)]


def physical_equivalence(F: PotentialSequence, G: PotentialSequence, N: int,
                         budget: int = TABLE_BUDGET) -> EquivalenceReport:
    diffs = difference_norms(F, G, N, budget)
    e = [d / n for n, d in enumerate(diffs, start=1)]
    return EquivalenceReport(e, float(max(diffs)), diffs, vanishing_trend(diffs),
                             bounded_trend(diffs), loglog_slope(diffs))


@dataclass
class PerturbationReport:
    applicable: bool
    holds: bool
    L: float  # sup_{n <= N} ||f_n - g_n||
    C_F: float
    C_G: float
    bound: float  # 3 L + C_F

    def as_dict(self):
        return dict(self.__dict__)


def perturbation_constant_check(F: PotentialSequence, G: PotentialSequence, N: int,
                                budget: int = TABLE_BUDGET) -> PerturbationReport:
    """Check ``C(G) <= 3 sup ||f_n - g_n|| + C(F)`` at horizon ``N``.

    Not applicable when the difference is not uniformly bounded.
    """
    diffs = difference_norms(F, G, N, budget)
    applicable = bounded_trend(diffs).holds if N >= 4 else True
    L = float(max(diffs))
    cF = almost_additivity_constant(F, N, budget).C_hat
    cG = almost_additivity_constant(G, N, budget).C_hat
    bound = 3 * L + cF
    return PerturbationReport(bool(applicable), bool(cG <= bound + PERTURBATION_TOL), L, cF,
                              cG, bound)
