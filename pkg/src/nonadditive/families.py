"""Measure-generated sequences, deterministic perturbations and type classification.

The classification separates almost additive sequences by two questions:
does the sequence have bounded variation, and is it uniformly close to the
Birkhoff sums of some locally constant potential from a finite pool?  Every
label is finite-horizon evidence against that pool, never a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .measures import CylinderWeights, Markov
from .potentials import (
    BirkhoffSequence,
    CombinedSequence,
    LocallyConstantPotential,
    MeasureSequence,
    PotentialSequence,
    expand_table,
    table_at,
)
from .pressure import gibbs_constants, integral, pressure_value, rpf_equilibrium
from .regularity import _periodic_data, almost_additivity_constant, variation
from .shift import TABLE_BUDGET, check_budget, periodic_prefixes
from .trend import bounded_trend, vanishing_trend

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def weights_eval(weights: CylinderWeights, w) -> float:
    """``log nu(C_w)``."""
    return weights.log_weight(w)


def dither(ranks, n):
    """Deterministic signs in ``{-1, +1}`` for ``n``-words given by their ranks.

    The sign is the top bit of the splitmix64 finalizer applied to
    ``rank + n * 0x9E3779B97F4A7C15`` (arithmetic mod 2**64).
    """
    with np.errstate(over="ignore"):
        z = np.asarray(ranks, dtype=np.uint64) + np.uint64(n) * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
    return np.where(z >> np.uint64(63), -1.0, 1.0)


class PerturbedSequence(PotentialSequence):
    """``g_n = f_n + alpha * delta_n`` with the word-hash dither ``delta_n``."""

    kind = "perturbed"

    def __init__(self, F: PotentialSequence, alpha: float):
        if alpha < 0:
            raise ValueError("alpha must be nonnegative")
        super().__init__(F.k)
        self.F = F
        self.alpha = float(alpha)
        self.pressure_base = F

    def window(self, n):
        return max(self.F.window(n), n) if self.alpha else self.F.window(n)

    def eval_words(self, words, n):
        words = np.asarray(words, dtype=np.int64)
        out = self.F.eval_words(words, n)
        if self.alpha:
            ranks = words[:, :n] @ (self.k ** np.arange(n - 1, -1, -1, dtype=np.int64))
            out = out + self.alpha * dither(ranks, n)
        return out

    def _add(self, n, tab):
        if not self.alpha:
            return tab
        W = self.window(n)
        check_budget(f"perturbed table n={n}", self.k**W, TABLE_BUDGET)
        base = table_at(self.F, n, W, tab)
        delta = dither(np.arange(self.k**n, dtype=np.int64), n)
        return base + self.alpha * expand_table(delta, self.k, W - n)

    def tables(self, n_max, budget=TABLE_BUDGET):
        for n, tab in self.F.tables(n_max, budget):
            yield n, self._add(n, tab)

    def table(self, n, budget=TABLE_BUDGET):
        return self._add(n, self.F.table(n, budget))

    def describe(self):
        return {"kind": self.kind, "k": self.k, "alpha": self.alpha, "F": self.F.describe()}


def holder_perturbation(F: PotentialSequence, alpha: float) -> PotentialSequence:
    """``F`` plus a deterministic ``+-alpha`` dither on ``n``-cylinders."""
    if alpha == 0:
        return F
    return PerturbedSequence(F, alpha)


def type1_sequence(phi: LocallyConstantPotential) -> MeasureSequence:
    """``f_n = log nu(C_n) + n P(phi)`` for the Markov equilibrium ``nu`` of ``phi``."""
    mm = rpf_equilibrium(phi)
    seq = MeasureSequence(Markov(mm.pi, mm.P), offset=mm.pressure)
    seq.potential = phi
    seq.equilibrium = mm
    return seq


def recentered_type1(phi: LocallyConstantPotential) -> CombinedSequence:
    """``log nu(C_n) + n P(phi) - S_n phi``, a uniformly bounded sequence."""
    return CombinedSequence(type1_sequence(phi), BirkhoffSequence(phi), 1.0, -1.0)


def fit_increments(F: PotentialSequence, r: int, n: int = None,
                   budget: int = TABLE_BUDGET) -> LocallyConstantPotential:
    """Least-squares window-``r`` fit to ``f_{n+1}(w) - f_n(sigma w)``.

    With uniform weights on words the least-squares locally constant fit is
    the average of the increment over each ``r``-cylinder.
    """
    k = F.k
    n = n or 6
    W = max(F.window(n + 1), 1 + F.window(n), r)
    check_budget("increment fit", k**W, budget)
    big = table_at(F, n + 1, W)
    ranks = np.arange(k**W, dtype=np.int64)
    wn = F.window(n)
    small = F.table(n, budget)[(ranks // k ** (W - 1 - wn)) % k**wn]
    inc = big - small
    return LocallyConstantPotential(k, r, inc.reshape(k**r, -1).mean(axis=1))


def default_pool(F: PotentialSequence, windows=(1, 2, 3), n: int = None) -> list:
    return [fit_increments(F, r, n) for r in windows]


@dataclass
class CandidateEvidence:
    window: int
    drift: float
    sup_diff: float
    bounded: bool
    series: list

    def as_dict(self):
        return dict(self.__dict__)


@dataclass
class SequenceClass:
    label: str  # Type1 | Type2-candidate | Type3 | Type4 | unclassified
    reason: str
    almost_additive: bool
    bounded_variation: bool
    C_hat: float
    M_hat: float
    candidates: list = field(default_factory=list)
    gibbs: dict = None
    pool_size: int = 0

    def as_dict(self):
        out = dict(self.__dict__)
        out["candidates"] = [c.as_dict() for c in self.candidates]
        return out


def classify_sequence(F: PotentialSequence, pool=None, N: int = 12, P: int = 8,
                      s: int = 0, weights: CylinderWeights = None,
                      budget: int = TABLE_BUDGET) -> SequenceClass:
    """Finite-horizon Type 1-4 evidence for ``F`` against a candidate pool.

    ``pool`` defaults to window 1-3 increment fits.  ``weights`` is an
    associated measure used only when variation is unbounded: tempered
    Gibbs constants point to Type 3, otherwise Type 4.  ``P`` is kept for
    interface symmetry with the battery and is recorded in the evidence.
    """
    h = min(N, 14)
    aa = almost_additivity_constant(F, h, budget)
    aa_ok = bounded_trend(aa.series).holds if h >= 4 else True
    var = variation(F, s, N, budget)
    if not aa_ok:
        return SequenceClass("unclassified", "not almost additive at horizon", False,
                             var.bounded.holds, aa.C_hat, var.M_hat)
    if pool is None:
        pool = default_pool(F)
    P_F = pressure_value(F, max(N, 16), budget)
    if not var.bounded.holds:
        if weights is None:
            return SequenceClass("unclassified", "unbounded variation, no associated measure",
                                 True, False, aa.C_hat, var.M_hat, pool_size=len(pool))
        g = gibbs_constants(weights, F, P_F, N, budget)
        label = "Type3" if g.weak_gibbs.holds else "Type4"
        return SequenceClass(label, f"unbounded variation, associated measure {g.label}", True,
                             False, aa.C_hat, var.M_hat, gibbs=g.as_dict(), pool_size=len(pool))
    evidence = []
    for psi in pool:
        S = BirkhoffSequence(psi)
        drift = P_F - pressure_value(S, max(N, 16), budget)
        D = CombinedSequence(F, S, 1.0, -1.0, -drift)
        series = [float(np.max(np.abs(t))) for _, t in D.tables(N, budget)]
        evidence.append(CandidateEvidence(psi.r, drift, max(series), bounded_trend(series).holds,
                                          series))
    if any(e.bounded for e in evidence):
        return SequenceClass("Type1", "bounded variation and a pool candidate at bounded distance",
                             True, True, aa.C_hat, var.M_hat, evidence, pool_size=len(pool))
    return SequenceClass("Type2-candidate", "bounded variation, no pool candidate works", True,
                         True, aa.C_hat, var.M_hat, evidence, pool_size=len(pool))


@dataclass
class UBIReport:
    hypothesis_met: bool
    C_hat: float
    item1_max: float  # max |h_{qk}(x0)| over periodic x0 of period k, qk <= N
    item1_holds: bool
    item2_L: dict  # period -> (bound L(k), observed max_n |h_n(x0)|)
    item2_holds: bool
    item3_max: list  # per measure: max_n |int h_n d mu|
    item3_holds: bool
    tol: float

    def as_dict(self):
        out = dict(self.__dict__)
        out["item2_L"] = {str(k): v for k, v in self.item2_L.items()}
        return out


def lemma_ubi_check(H: PotentialSequence, P: int, N: int, measures=(), tol: float = 1e-6,
                    budget: int = TABLE_BUDGET) -> UBIReport:
    """Uniform bounds for an almost additive ``H`` with ``||h_n|| / n -> 0``.

    Item 1: ``|h_{qk}(x0)| <= C`` at periodic ``x0`` of period ``k``.
    Item 2: ``|h_n(x0)| <= L(k) = 2C + max_{j < k} |h_j|`` on the orbit, all ``n <= N``.
    Item 3: ``|int h_n d mu| <= C`` for each invariant Markov measure.
    ``measures`` holds :class:`MarkovMeasure` or :class:`Markov` weights.
    """
    norms = [float(np.max(np.abs(t))) for _, t in H.tables(N, budget)]
    hyp = vanishing_trend(norms).holds
    C = almost_additivity_constant(H, min(N, 14), budget).C_hat
    pts, periods = _periodic_data(H.k, P, budget)
    W = max(H.window(n) for n in range(1, N + 1))
    pref = periodic_prefixes(pts, W)
    vals = np.vstack([np.abs(H.eval_words(pref[:, : H.window(n)], n)) for n in range(1, N + 1)])
    n_col = np.arange(1, N + 1)[:, None]
    mult = n_col % periods[None, :] == 0
    item1 = float(vals[mult].max()) if mult.any() else 0.0
    L = {}
    ok2 = True
    for q in np.unique(periods):
        sel = periods == q
        head = float(vals[: q - 1, sel].max()) if q > 1 else 0.0
        bound = 2 * C + head
        seen = float(vals[:, sel].max())
        L[int(q)] = (bound, seen)
        ok2 &= seen <= bound + tol
    item3 = []
    for mu in measures:
        w = mu.weights() if hasattr(mu, "weights") and callable(mu.weights) else mu
        item3.append(max(abs(integral(H, n, w, budget)) for n in range(1, N + 1)))
    ok3 = all(v <= C + tol for v in item3)
    return UBIReport(bool(hyp), C, item1, bool(item1 <= C + tol), L, bool(ok2), item3, bool(ok3),
                     tol)
