"""Topological pressure, RPF equilibria, Gibbs and quasi-Bernoulli constants.

Pressure of a sequence is read off cylinder partition sums
``Z_n = sum_{|w| = n} exp(sup_{C_w} f_n)``.  For window-2 potentials the
transfer matrix ``L_ab = exp(phi(ab))`` gives the exact value and the
Markov equilibrium measure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cohomology import mean_cycle
from .errors import ConvergenceError
from .measures import CylinderWeights, Markov
from .potentials import (
    BirkhoffSequence,
    LocallyConstantPotential,
    MeasureSequence,
    PotentialSequence,
    cylinder_extrema_table,
    expand_table,
    sup_norm,
    table_at,
)
from .regularity import _periodic_data, almost_additivity_constant
from .shift import TABLE_BUDGET, index_word, periodic_prefixes, word_str
from .trend import TrendVerdict, bounded_trend, flat_last_quartile, vanishing_trend

POWER_TOL = 1e-12
POWER_MAX_ITER = 100_000


def logsumexp(a):
    a = np.asarray(a, dtype=float)
    m = float(np.max(a))
    return m + float(np.log(np.sum(np.exp(a - m))))


def aitken(x):
    """Aitken extrapolation of the last three terms; falls back to the last term."""
    if len(x) < 3:
        return float(x[-1])
    a, b, c = x[-3:]
    den = (c - b) - (b - a)
    if den == 0 or not np.isfinite(den) or abs(c - b) >= abs(b - a):
        return float(c)
    return float(c - (c - b) ** 2 / den)


@dataclass
class PressureReport:
    method: str
    log_Z: list
    raw: list  # (1/n) log Z_n
    differences: list  # log Z_{n+1} - log Z_n
    extrapolated: float  # Aitken step on the difference series
    value: float  # best estimate: the extrapolated difference value

    def as_dict(self):
        return dict(self.__dict__)


def partition_pressure(F: PotentialSequence, N: int, budget: int = TABLE_BUDGET) -> PressureReport:
    """Cylinder partition sums with exact sups for ``n <= N``."""
    logZ = []
    for n, tab in F.tables(N, budget):
        _, hi = cylinder_extrema_table(F, n, table=tab, budget=budget)
        logZ.append(logsumexp(hi))
    raw = [z / n for n, z in enumerate(logZ, start=1)]
    diffs = list(np.diff(logZ)) if N > 1 else [logZ[0]]
    ext = aitken(diffs)
    return PressureReport("cylinder", logZ, raw, [float(d) for d in diffs], ext, ext)


@dataclass
class TransferResult:
    log_lambda: float
    left: np.ndarray  # u with u L = lambda u, sum 1
    right: np.ndarray  # v with L v = lambda v, sum 1
    iterations: int
    matrix_shift: float  # L is stored as exp(phi - shift)

    def as_dict(self):
        return {"log_lambda": self.log_lambda, "left": self.left.tolist(),
                "right": self.right.tolist(), "iterations": self.iterations}


def _as_window2(phi: LocallyConstantPotential) -> LocallyConstantPotential:
    if phi.r > 2:
        raise ValueError("transfer machinery needs window <= 2; recode the alphabet first")
    return phi.lift(2)


def _power(M, transpose=False, tol=POWER_TOL, max_iter=POWER_MAX_ITER):
    A = M.T if transpose else M
    v = np.full(A.shape[0], 1.0 / A.shape[0])
    lam = 0.0
    for it in range(1, max_iter + 1):
        w = A @ v
        lam_new = w.sum()
        w /= lam_new
        if np.max(np.abs(w - v)) <= tol * np.max(np.abs(w)) and abs(lam_new - lam) <= tol * lam_new:
            return lam_new, w, it
        v, lam = w, lam_new
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations")


def transfer_pressure(phi: LocallyConstantPotential, tol: float = POWER_TOL,
                      max_iter: int = POWER_MAX_ITER) -> TransferResult:
    """``log`` spectral radius of ``L_ab = exp(phi(ab))`` by power iteration."""
    phi2 = _as_window2(phi)
    k = phi2.k
    shift = float(phi2.values.max())
    L = np.exp(phi2.values.reshape(k, k) - shift)
    lam, v, it1 = _power(L, False, tol, max_iter)
    _, u, it2 = _power(L, True, tol, max_iter)
    return TransferResult(float(np.log(lam) + shift), u, v, max(it1, it2), shift)


@dataclass
class MarkovMeasure:
    pi: np.ndarray
    P: np.ndarray
    entropy: float
    integral: float
    pressure: float
    residual: float  # |h + int phi - pressure|

    def weights(self) -> Markov:
        return Markov(self.pi, self.P)

    def as_dict(self):
        return {"pi": self.pi.tolist(), "P": self.P.tolist(), "entropy": self.entropy,
                "integral": self.integral, "pressure": self.pressure, "residual": self.residual}


def markov_entropy(pi, P):
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(P > 0, P * np.log(P), 0.0)
    return float(-(pi[:, None] * terms).sum())


def rpf_equilibrium(phi: LocallyConstantPotential, tr: TransferResult = None) -> MarkovMeasure:
    """Markov equilibrium ``P_ab = L_ab v_b / (lambda v_a)``, ``pi ~ u v``."""
    phi2 = _as_window2(phi)
    k = phi2.k
    tr = tr or transfer_pressure(phi2)
    lam = np.exp(tr.log_lambda - tr.matrix_shift)
    L = np.exp(phi2.values.reshape(k, k) - tr.matrix_shift)
    v, u = tr.right, tr.left
    P = L * v[None, :] / (lam * v[:, None])
    P /= P.sum(axis=1, keepdims=True)
    pi = u * v
    pi /= pi.sum()
    h = markov_entropy(pi, P)
    integral = float((pi[:, None] * P * phi2.values.reshape(k, k)).sum())
    return MarkovMeasure(pi, P, h, integral, tr.log_lambda, abs(h + integral - tr.log_lambda))


def integral(F: PotentialSequence, n: int, weights: CylinderWeights,
             budget: int = TABLE_BUDGET) -> float:
    """Exact ``int f_n d nu = sum_w nu(C_w) f_n(w)`` over ``window(n)``-words."""
    W = F.window(n)
    mass = np.exp(weights.log_table(W, budget))
    return float(np.dot(mass, F.table(n, budget)))


@dataclass
class GibbsReport:
    K: list  # K_n for n = 1..N
    log_K: list
    P_value: float
    gibbs: TrendVerdict
    weak_gibbs: TrendVerdict
    label: str

    def as_dict(self):
        out = dict(self.__dict__)
        out["gibbs"] = self.gibbs.as_dict()
        out["weak_gibbs"] = self.weak_gibbs.as_dict()
        return out


def gibbs_log_constants(weights: CylinderWeights, F: PotentialSequence, P_value: float, N: int,
                        budget: int = TABLE_BUDGET) -> list:
    """``log K_n = max |log nu(C_w) + n P - f_n(x)|`` over ``|w| = n`` and ``x`` in ``C_w``."""
    out = []
    logmu = dict(weights.log_tables(N, budget))
    for n, tab in F.tables(N, budget):
        W = max(F.window(n), n)
        fn = table_at(F, n, W, tab, budget)
        mu = expand_table(logmu[n], F.k, W - n)
        out.append(float(np.max(np.abs(mu + n * P_value - fn))))
    return out


def gibbs_constants(weights: CylinderWeights, F: PotentialSequence, P_value: float, N: int,
                    budget: int = TABLE_BUDGET) -> GibbsReport:
    logK = gibbs_log_constants(weights, F, P_value, N, budget)
    g = bounded_trend(logK)
    w = vanishing_trend(logK)
    label = "Gibbs" if g.holds else ("weak-Gibbs" if w.holds else "neither")
    return GibbsReport([float(np.exp(x)) for x in logK], logK, float(P_value), g, w, label)


@dataclass
class QuasiBernoulliReport:
    constant: float
    log_constant: float
    argmax: tuple  # (n, m, word)

    def as_dict(self):
        return dict(self.__dict__)


def quasi_bernoulli_constant(weights: CylinderWeights, N: int,
                             budget: int = TABLE_BUDGET) -> QuasiBernoulliReport:
    """``max exp|log nu(uv) - log nu(u) - log nu(v)|`` over ``|u| + |v| <= N``."""
    k = weights.k
    tabs = dict(weights.log_tables(N, budget))
    best, arg = 0.0, (0, 0, "")
    for t in range(2, N + 1):
        for n in range(1, t):
            m = t - n
            d = np.abs(tabs[t] - np.repeat(tabs[n], k**m) - np.tile(tabs[m], k**n))
            i = int(np.argmax(d))
            if d[i] > best:
                best, arg = float(d[i]), (n, m, word_str(index_word(i, k, t)))
    return QuasiBernoulliReport(float(np.exp(best)), best, arg)


@dataclass
class UBAReport:
    lhs: float  # ||f_N|| / N
    limit: float  # max(Lambda_max, -Lambda_min)
    lam_max: float
    lam_min: float
    gap: float
    method: str  # "mean-cycle" for Birkhoff inputs, "periodic" otherwise
    C_hat: float
    literal_bound: float  # 2 C_hat / N + 1e-6
    literal_holds: bool
    transient_constant: float  # (V - 1) osc(phi) for Birkhoff inputs
    transient_bound: float
    transient_holds: bool

    def as_dict(self):
        return dict(self.__dict__)


def uba_check(F: PotentialSequence, N: int, P: int, C_hat: float = None,
              budget: int = TABLE_BUDGET) -> UBAReport:
    """Compare ``||f_N|| / N`` with the extreme invariant averages.

    For Birkhoff sums the extremes come from exact mean cycles and the gap
    is at most ``(V - 1) osc(phi) / N`` with ``V = k**(r-1)`` de Bruijn nodes.
    Otherwise periodic averages ``f_n(p) / n`` at the largest multiple ``n``
    of each period ``q <= P`` not exceeding ``N`` stand in for the extremes.
    """
    lhs = sup_norm(F, N, budget) / N
    if C_hat is None:
        C_hat = almost_additivity_constant(F, min(N, 12), budget).C_hat
    if isinstance(F, BirkhoffSequence):
        phi = F.base.lift(max(F.base.r, 2))
        hi = mean_cycle(phi, "max").value
        lo = mean_cycle(phi, "min").value
        CT = (phi.k ** (phi.r - 1) - 1) * phi.osc()
        method = "mean-cycle"
    else:
        pts, periods = _periodic_data(F.k, P, budget)
        hi, lo = -np.inf, np.inf
        Wmax = max(F.window(n) for n in range(1, N + 1))
        pref = periodic_prefixes(pts, Wmax)
        for q in np.unique(periods):
            n = (N // q) * q
            if n == 0:
                continue
            sel = periods == q
            vals = F.eval_words(pref[sel][:, : F.window(n)], n) / n
            hi, lo = max(hi, float(vals.max())), min(lo, float(vals.min()))
        CT = float("nan")
        method = "periodic"
    limit = max(hi, -lo)
    gap = abs(lhs - limit)
    lit = 2 * C_hat / N + 1e-6
    tb = CT / N + 1e-9 if method == "mean-cycle" else float("nan")
    return UBAReport(lhs, limit, hi, lo, gap, method, C_hat, lit, bool(gap <= lit), CT, tb,
                     bool(gap <= tb) if method == "mean-cycle" else False)


@dataclass
class CEMReport:
    K_hat: float
    series: list  # running max of |f_n(p) - g_n(p) - n (P_F - P_G)| over multiples n <= N
    slope: float  # max |Q_n(p)| / n at the largest multiple of each period
    bounded: bool
    drift: float

    def as_dict(self):
        return dict(self.__dict__)


def cem_periodic_test(F: PotentialSequence, G: PotentialSequence, P_F: float, P_G: float,
                      P: int, N: int, budget: int = TABLE_BUDGET) -> CEMReport:
    """Periodic witness of ``|f_n(p) - g_n(p) - n (P_F - P_G)| <= K``."""
    k = F.k
    pts, periods = _periodic_data(k, P, budget)
    W = max(max(F.window(n), G.window(n)) for n in range(1, N + 1))
    pref = periodic_prefixes(pts, W)
    drift = P_F - P_G
    per_n, slope = [], 0.0
    for n in range(1, N + 1):
        sel = n % periods == 0
        if not sel.any():
            per_n.append(0.0)
            continue
        x = pref[sel]
        Q = np.abs(F.eval_words(x[:, : F.window(n)], n) - G.eval_words(x[:, : G.window(n)], n)
                   - n * drift)
        per_n.append(float(Q.max()))
        last = sel & (periods * (N // periods) == n)
        if last.any():
            y = pref[last]
            Ql = np.abs(F.eval_words(y[:, : F.window(n)], n)
                        - G.eval_words(y[:, : G.window(n)], n) - n * drift)
            slope = max(slope, float(Ql.max()) / n)
    series = list(np.maximum.accumulate(per_n))
    return CEMReport(float(series[-1]), [float(s) for s in series], slope,
                     flat_last_quartile(series, abs_tol=1e-9), drift)


def pressure_value(F: PotentialSequence, N: int = 20, budget: int = TABLE_BUDGET) -> float:
    """Best available pressure of ``F``.

    Exact for probability-measure sequences (``log Z_n = n * offset``) and
    for window-2 Birkhoff sums (transfer matrix); bounded perturbations
    inherit the pressure of what they perturb.  Everything else falls back
    to the extrapolated partition sums.
    """
    base = getattr(F, "pressure_base", None)
    if base is not None:
        return pressure_value(base, N, budget)
    if isinstance(F, MeasureSequence):
        return F.offset
    if isinstance(F, BirkhoffSequence) and F.base.r <= 2:
        return transfer_pressure(F.base).log_lambda
    return partition_pressure(F, N, budget).value
