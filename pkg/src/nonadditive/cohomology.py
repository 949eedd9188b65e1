"""Additive cohomology for locally constant potentials on the full shift.

A window-``r`` potential is a weight on the edges of the de Bruijn graph whose
nodes are the ``(r - 1)``-words.  Coboundaries are gradients on that graph,
invariant-measure averages are cycle means, and both questions reduce to
finite linear algebra or to Karp's minimum mean cycle algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DecompositionError
from .potentials import BirkhoffSequence, LocallyConstantPotential, eval_point
from .shift import (
    DEFAULT_BUDGET,
    check_budget,
    enumerate_periodic_points,
    index_word,
    prefix_array,
    transitive_point,
    word_str,
)

FEASIBLE_TOL = 1e-9
NODE_BUDGET = 1024


@dataclass
class CertificateResult:
    value: float  # max |S_n phi(p)| over n <= P and points with sigma^n p = p
    point: str
    period: int  # primitive period of the witness
    n: int  # largest multiple of the period not exceeding P
    P: int

    def as_dict(self):
        return dict(self.__dict__)


def livsic_certificate(phi: LocallyConstantPotential, P: int,
                       budget: int = DEFAULT_BUDGET) -> CertificateResult:
    """Largest periodic sum ``|S_n phi(p)|`` with ``sigma^n p = p`` and ``n <= P``.

    For an orbit of primitive period ``q`` the sum at ``n = jq`` is ``j S_q phi(p)``,
    so the largest multiple of ``q`` wins.  Ties keep the first orbit in
    (period, lexicographic) order.
    """
    S = BirkhoffSequence(phi)
    best, arg = -1.0, None
    for p, q in enumerate_periodic_points(phi.k, P, budget):
        n = (P // q) * q
        v = abs(eval_point(S, p, n))
        if v > best:
            best, arg = v, (p, q, n)
    return CertificateResult(float(best), str(arg[0]), arg[1], arg[2], P)


@dataclass
class CoboundarySolution:
    q: LocallyConstantPotential  # window r - 1, window 0 is a global constant
    c: float
    residual: float
    feasible: bool

    def as_dict(self):
        return {"q": self.q.as_dict(), "c": self.c, "residual": self.residual,
                "feasible": self.feasible}


def _edge_nodes(k, r):
    """Suffix and prefix node ranks of every ``r``-word."""
    idx = np.arange(k**r, dtype=np.int64)
    return idx % k ** (r - 1), idx // k


def solve_coboundary(phi: LocallyConstantPotential, tol: float = FEASIBLE_TOL) -> CoboundarySolution:
    """Least-squares solve ``phi(w) = c + q(w[1:]) - q(w[:-1])`` with ``sum q = 0``."""
    k, r = phi.k, phi.r
    if r < 1:
        raise ValueError("window must be at least 1")
    V = k ** (r - 1)
    suf, pre = _edge_nodes(k, r)
    rows = k**r
    A = np.zeros((rows + 1, V + 1))
    A[np.arange(rows), suf] += 1.0
    A[np.arange(rows), pre] -= 1.0
    A[:rows, V] = 1.0
    A[rows, :V] = 1.0
    b = np.concatenate([phi.values, [0.0]])
    sol = np.linalg.lstsq(A, b, rcond=None)[0]
    qv, c = sol[:V], float(sol[V])
    resid = float(np.max(np.abs(phi.values - c - qv[suf] + qv[pre])))
    return CoboundarySolution(LocallyConstantPotential(k, r - 1, qv), c, resid, resid <= tol)


@dataclass
class MeanCycleResult:
    value: float
    exact: Fraction
    cycle: tuple  # one period of the optimal periodic point, least rotation
    direction: str

    def as_dict(self):
        return {"value": self.value, "exact": str(self.exact), "cycle": word_str(self.cycle),
                "direction": self.direction}


def _least_rotation(w):
    return min(tuple(w[i:] + w[:i]) for i in range(len(w)))


def _integer_weights(values):
    """Scale dyadic floats to integers exactly; return (ints, scale)."""
    fr = [Fraction(float(v)) for v in values]
    den = max(f.denominator for f in fr)
    return [int(f * den) for f in fr], den


def mean_cycle(phi: LocallyConstantPotential, direction: str = "max",
               node_budget: int = NODE_BUDGET) -> MeanCycleResult:
    """Optimal cycle mean on the de Bruijn graph (Karp), in exact arithmetic.

    Every double is a dyadic rational, so the weights are scaled to integers
    and the whole computation is exact.
    """
    if direction not in ("max", "min"):
        raise ValueError("direction must be 'max' or 'min'")
    if phi.r < 2:
        phi = phi.lift(2)
    k, r = phi.k, phi.r
    V = k ** (r - 1)
    check_budget("de Bruijn nodes", V, node_budget)
    w, den = _integer_weights(phi.values)
    sign = -1 if direction == "max" else 1
    w = [sign * x for x in w]
    # edges into node v: from u = a * k^(r-2) + v // k, labelled by word rank u * k + v % k
    step = k ** (r - 2)
    INF = None
    D = [[0] * V]
    pred = [[-1] * V]
    for _ in range(V):
        prev = D[-1]
        cur, pr = [INF] * V, [-1] * V
        for v in range(V):
            base = v // k
            last = v % k
            for a in range(k):
                u = a * step + base
                if prev[u] is INF:
                    continue
                val = prev[u] + w[u * k + last]
                if cur[v] is INF or val < cur[v]:
                    cur[v], pr[v] = val, u
        D.append(cur)
        pred.append(pr)
    best, vstar = None, None
    for v in range(V):
        worst = max(Fraction(D[V][v] - D[j][v], V - j) for j in range(V))
        if best is None or worst < best:
            best, vstar = worst, v
    # any closed segment of the optimal V-step walk into vstar has mean `best`
    walk = [vstar]
    for j in range(V, 0, -1):
        walk.append(pred[j][walk[-1]])
    walk.reverse()
    cyc = None
    for length in range(1, V + 1):
        for i in range(V + 1 - length):
            if walk[i] != walk[i + length]:
                continue
            seg = walk[i:i + length + 1]
            tot = sum(w[seg[j] * k + seg[j + 1] % k] for j in range(length))
            if Fraction(tot, length) == best:
                cyc = seg[:-1]
                break
        if cyc is not None:
            break
    if cyc is None:
        raise DecompositionError("Karp walk did not contain an optimal cycle")
    symbols = tuple(index_word(node, k, r - 1)[0] for node in cyc)
    exact = sign * best / den
    return MeanCycleResult(float(exact), exact, _least_rotation(symbols), direction)


def periodic_mean_optimum(phi: LocallyConstantPotential, P: int, direction: str = "max",
                          budget: int = DEFAULT_BUDGET):
    """Brute-force optimum of ``S_q phi(p) / q`` over periodic orbits with ``q <= P``."""
    ints, den = _integer_weights(phi.values)
    r = phi.r
    best, arg = None, None
    powers = phi.k ** np.arange(r - 1, -1, -1, dtype=np.int64)
    for p, q in enumerate_periodic_points(phi.k, P, budget):
        x = prefix_array(p, q + r - 1)
        idx = [int(x[i:i + r] @ powers) for i in range(q)]
        val = Fraction(sum(ints[i] for i in idx), q * den)
        better = best is None or (val > best if direction == "max" else val < best)
        if better:
            best, arg = val, p.period
    return best, arg


def weak_coboundary_check(phi: LocallyConstantPotential, tol: float = FEASIBLE_TOL) -> bool:
    """True iff every invariant measure integrates ``phi`` to zero."""
    hi = mean_cycle(phi, "max").value
    lo = mean_cycle(phi, "min").value
    return abs(hi) <= tol and abs(lo) <= tol


def transfer_apply(f: LocallyConstantPotential) -> LocallyConstantPotential:
    """``(L f)(y) = (1/k) sum_a f(a y)``; window ``max(r - 1, 1)``."""
    k, r = f.k, f.r
    if r <= 1:
        return LocallyConstantPotential.constant(k, f.values.mean(), 1)
    return LocallyConstantPotential(k, r - 1, f.values.reshape(k, -1).mean(axis=0))


@dataclass
class BouschDecomposition:
    u: LocallyConstantPotential  # window r - 1
    g: LocallyConstantPotential  # window r, L g = 0
    c: float
    residual: float
    kernel_residual: float

    def as_dict(self):
        return {"u": self.u.as_dict(), "g": self.g.as_dict(), "c": self.c,
                "residual": self.residual, "kernel_residual": self.kernel_residual}


def bousch_decompose(phi: LocallyConstantPotential, tol: float = FEASIBLE_TOL) -> BouschDecomposition:
    """Split ``phi = (u o sigma - u) + g + c`` with ``L g = 0`` and ``sum u = 0``."""
    k, r = phi.k, phi.r
    c = phi.mean()
    if r == 1:
        u = LocallyConstantPotential(k, 0, [0.0])
        g = LocallyConstantPotential(k, 1, phi.values - c)
    else:
        V = k ** (r - 1)
        # (L' u)(y) = (1/k) sum_a u(a y[:-1]) acts on window-(r-1) functions
        Lp = np.zeros((V, V))
        head = np.arange(V) // k
        step = k ** (r - 2)
        for a in range(k):
            Lp[np.arange(V), a * step + head] += 1.0 / k
        A = np.vstack([np.eye(V) - Lp, np.ones((1, V))])
        rhs = np.concatenate([transfer_apply(phi).values - c, [0.0]])
        uv, *_ = np.linalg.lstsq(A, rhs, rcond=None)
        if np.max(np.abs(A @ uv - rhs)) > tol:
            raise DecompositionError("transfer-kernel system has no solution")
        u = LocallyConstantPotential(k, r - 1, uv)
        g = phi - u.coboundary() - c
    recon = u.coboundary() + g + c
    residual = float(np.max(np.abs(phi.lift(max(r, recon.r)).values - recon.values)))
    kernel = float(np.max(np.abs(transfer_apply(g).values)))
    return BouschDecomposition(u, g, c, residual, kernel)


def transitive_coboundary_crosscheck(phi: LocallyConstantPotential, L: int,
                                     sol: CoboundarySolution = None) -> float:
    """Define ``q`` along a transitive prefix by ``q(sigma^j w) = S_j phi(w)`` and compare.

    Returns the largest discrepancy, after removing a constant, between this
    orbit-defined ``q`` and the linear-algebra solution, over node words seen
    on the prefix.  Infinite when the orbit definition is inconsistent.
    """
    sol = sol or solve_coboundary(phi)
    k, r = phi.k, phi.r
    if r < 2:
        return 0.0
    omega = transitive_point(k, max(L, r - 1))
    n = len(omega.preperiod)
    x = prefix_array(omega, n + r)
    powers = k ** np.arange(r - 1, -1, -1, dtype=np.int64)
    node_pow = k ** np.arange(r - 2, -1, -1, dtype=np.int64)
    S = np.concatenate([[0.0], np.cumsum([phi.values[int(x[j:j + r] @ powers)] for j in range(n)])])
    seen = {}
    worst = 0.0
    for j in range(n):
        node = int(x[j:j + r - 1] @ node_pow)
        val = S[j] - sol.c * j
        if node in seen:
            worst = max(worst, abs(seen[node] - val))
        else:
            seen[node] = val
    nodes = np.array(sorted(seen))
    orb = np.array([seen[v] for v in nodes])
    diff = orb - sol.q.values[nodes]
    return float(max(worst, np.max(diff) - np.min(diff)))


@dataclass
class RotationReport:
    alpha: str
    rational: bool
    period: int  # denominator of alpha when rational, else 0
    integral: float
    series: list  # n -> max over grid of |S_n phi - n * integral|
    running_sup: list
    eventually_periodic: bool  # only meaningful for rational alpha
    sup: float

    def as_dict(self):
        return dict(self.__dict__)


def parse_alpha(alpha):
    """``"p/q"`` gives an exact rational; a decimal literal is taken as given."""
    if isinstance(alpha, Fraction):
        return alpha, True
    s = str(alpha).strip()
    if "/" in s:
        return Fraction(s), True
    return float(s), False


def trig_eval(coeffs, x):
    """``sum_j a_j cos(2 pi f_j x) + b_j sin(2 pi f_j x)`` at an array ``x``."""
    out = np.zeros_like(x, dtype=float)
    for f, a, b in coeffs:
        out += a * np.cos(2 * np.pi * f * x) + b * np.sin(2 * np.pi * f * x)
    return out


def rotation_demo(alpha, coeffs, m: int, N: int, tol: float = 1e-9) -> RotationReport:
    """Growth of ``max_j |S_n phi(j/m) - n int phi|`` for the rotation by ``alpha``."""
    a, rational = parse_alpha(alpha)
    integral = float(sum(ca for f, ca, _ in coeffs if f == 0))
    grid = np.arange(m) / m
    S = np.zeros(m)
    series = []
    for n in range(N):
        if rational:
            # exact orbit position: j/m + n p/q mod 1
            shift = float((Fraction(n) * a) % 1)
        else:
            shift = (n * a) % 1.0
        S += trig_eval(coeffs, (grid + shift) % 1.0) - integral
        series.append(float(np.max(np.abs(S))))
    period = a.denominator if rational else 0
    periodic = False
    if rational and N > 2 * period:
        s = np.array(series)
        periodic = bool(np.all(np.abs(s[period:] - s[:-period]) <= tol))
    run = list(np.maximum.accumulate(series))
    return RotationReport(str(alpha), rational, period, integral, series, run, periodic,
                          float(max(series)))
