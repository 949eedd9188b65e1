"""Consistent cylinder measures on the full shift.

Every family stores log-weights so that long cylinders never underflow.
Word tables are indexed by lexicographic rank, matching
:func:`nonadditive.shift.words_array`.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateMeasureError
from .shift import TABLE_BUDGET, as_word, check_budget, word_index, word_str

_TOL = 1e-12


def _require_finite(values, what):
    if not np.all(np.isfinite(values)):
        raise DegenerateMeasureError(f"{what}: some cylinder has zero weight")
    return values


class CylinderWeights:
    """Base class: ``log nu(C_w)`` for words ``w`` over ``k`` symbols."""

    kind = "abstract"

    def __init__(self, k):
        if k < 2:
            raise ValueError("alphabet needs at least two symbols")
        self.k = int(k)

    def log_weights(self, words):
        """Log-weights of a batch of words given as a ``(B, n)`` int array."""
        raise NotImplementedError

    def log_tables(self, n_max, budget=TABLE_BUDGET):
        for n in range(1, n_max + 1):
            yield n, self.log_table(n, budget)

    def log_table(self, n, budget=TABLE_BUDGET):
        for m, tab in self.log_tables(n, budget):
            if m == n:
                return tab
        raise ValueError("n must be positive")

    def log_weight(self, word):
        w = as_word(word)
        if not w:
            return 0.0
        return float(self.log_weights(np.asarray([w], dtype=np.int64))[0])

    def weight(self, word):
        return float(np.exp(self.log_weight(word)))

    def describe(self):
        return {"kind": self.kind, "k": self.k}


class Bernoulli(CylinderWeights):
    kind = "bernoulli"

    def __init__(self, p):
        p = np.asarray(p, dtype=float)
        super().__init__(p.size)
        if np.any(p <= 0) or abs(p.sum() - 1.0) > 1e-9:
            raise DegenerateMeasureError("Bernoulli weights must be positive and sum to 1")
        self.p = p
        self.logp = np.log(p)

    def log_weights(self, words):
        words = np.asarray(words, dtype=np.int64)
        return self.logp[words].sum(axis=1)

    def log_tables(self, n_max, budget=TABLE_BUDGET):
        tab = self.logp.copy()
        for n in range(1, n_max + 1):
            if n > 1:
                check_budget(f"Bernoulli table n={n}", self.k**n, budget)
                tab = np.repeat(tab, self.k) + np.tile(self.logp, self.k ** (n - 1))
            yield n, tab

    def describe(self):
        return {"kind": self.kind, "k": self.k, "p": self.p.tolist()}


class Markov(CylinderWeights):
    """``nu(C_w) = pi[w_1] * Q[w_1, w_2] * ... * Q[w_{n-1}, w_n]``."""

    kind = "markov"

    def __init__(self, pi, Q):
        pi = np.asarray(pi, dtype=float)
        Q = np.asarray(Q, dtype=float)
        super().__init__(pi.size)
        if Q.shape != (self.k, self.k):
            raise ValueError("transition matrix shape does not match alphabet")
        if np.any(pi < 0) or np.any(Q < 0):
            raise DegenerateMeasureError("Markov parameters must be nonnegative")
        if abs(pi.sum() - 1.0) > 1e-9 or np.any(np.abs(Q.sum(axis=1) - 1.0) > 1e-9):
            raise DegenerateMeasureError("Markov parameters must be stochastic")
        self.pi = pi
        self.Q = Q
        with np.errstate(divide="ignore"):
            self.logpi = np.log(pi)
            self.logQ = np.log(Q)

    def log_weights(self, words):
        words = np.asarray(words, dtype=np.int64)
        out = self.logpi[words[:, 0]]
        if words.shape[1] > 1:
            out = out + self.logQ[words[:, :-1], words[:, 1:]].sum(axis=1)
        return _require_finite(out, "Markov weights")

    def log_tables(self, n_max, budget=TABLE_BUDGET):
        k = self.k
        tab = self.logpi.copy()
        flatQ = self.logQ.ravel()
        for n in range(1, n_max + 1):
            if n > 1:
                check_budget(f"Markov table n={n}", k**n, budget)
                # rank(w a) = rank(w) k + a, and rank(w a) mod k^2 encodes (last(w), a)
                tab = np.repeat(tab, k) + np.tile(flatQ, k ** (n - 2))
            yield n, _require_finite(tab, "Markov weights")

    def describe(self):
        return {"kind": self.kind, "k": self.k, "pi": self.pi.tolist(), "Q": self.Q.tolist()}


class HiddenMarkov(CylinderWeights):
    """``nu(C_w) = pi M_{w_1} ... M_{w_n} 1`` with ``sum_a M_a`` row-stochastic."""

    kind = "hmm"

    def __init__(self, pi, mats):
        pi = np.asarray(pi, dtype=float)
        mats = np.asarray(mats, dtype=float)
        super().__init__(mats.shape[0])
        d = pi.size
        if mats.shape[1:] != (d, d):
            raise ValueError("hidden-Markov blocks must be d x d with d = len(pi)")
        if np.any(pi < 0) or np.any(mats < 0):
            raise DegenerateMeasureError("hidden-Markov parameters must be nonnegative")
        if abs(pi.sum() - 1.0) > 1e-9:
            raise DegenerateMeasureError("initial hidden distribution must sum to 1")
        if np.any(np.abs(mats.sum(axis=0).sum(axis=1) - 1.0) > 1e-9):
            raise DegenerateMeasureError("sum of hidden-Markov blocks must be row-stochastic")
        self.pi = pi
        self.mats = mats
        self.d = d

    def log_weights(self, words):
        words = np.asarray(words, dtype=np.int64)
        B, n = words.shape
        v = np.broadcast_to(self.pi, (B, self.d)).copy()
        s = np.zeros(B)
        with np.errstate(divide="ignore", invalid="ignore"):
            for j in range(n):
                v = np.einsum("bi,bij->bj", v, self.mats[words[:, j]])
                t = v.sum(axis=1)
                s += np.log(t)
                v /= t[:, None]
        return _require_finite(s, "hidden-Markov weights")

    def log_tables(self, n_max, budget=TABLE_BUDGET):
        k, d = self.k, self.d
        v = self.pi[None, :]
        s = np.zeros(1)
        with np.errstate(divide="ignore", invalid="ignore"):
            for n in range(1, n_max + 1):
                check_budget(f"hidden-Markov table n={n}", k**n, budget)
                v = np.einsum("bi,aij->baj", v, self.mats).reshape(-1, d)
                t = v.sum(axis=1)
                s = np.repeat(s, k) + np.log(t)
                v /= t[:, None]
                yield n, _require_finite(s, "hidden-Markov weights")

    def describe(self):
        return {"kind": self.kind, "k": self.k, "pi": self.pi.tolist(), "mats": self.mats.tolist()}


class ExplicitTable(CylinderWeights):
    """Log-weights listed for every word up to a fixed depth."""

    kind = "table"

    def __init__(self, k, tables, tol=1e-9):
        super().__init__(k)
        self.tables = [np.asarray(t, dtype=float) for t in tables]
        self.depth = len(self.tables)
        for n, t in enumerate(self.tables, start=1):
            if t.size != k**n:
                raise ValueError(f"table at depth {n} needs {k**n} entries")
        self.check_consistency(tol)

    @classmethod
    def from_mapping(cls, k, mapping, tol=1e-9):
        """Build from ``{word: log-weight}`` covering every word of length ``1..D``."""
        depth = max(len(as_word(w)) for w in mapping)
        tabs = [np.full(k**n, np.nan) for n in range(1, depth + 1)]
        for w, val in mapping.items():
            w = as_word(w)
            tabs[len(w) - 1][word_index(w, k)] = val
        for n, t in enumerate(tabs, start=1):
            if np.isnan(t).any():
                raise ValueError(f"missing log-weights at depth {n}")
        return cls(k, tabs, tol)

    def check_consistency(self, tol=1e-9):
        k = self.k
        parent = np.zeros(1)
        for n, t in enumerate(self.tables, start=1):
            _require_finite(t, f"table depth {n}")
            kids = np.exp(t).reshape(-1, k).sum(axis=1)
            bad = np.abs(kids - np.exp(parent)) > tol * np.maximum(1.0, np.exp(parent))
            if bad.any():
                raise DegenerateMeasureError(f"table not consistent at depth {n}")
            parent = t

    def log_weights(self, words):
        words = np.asarray(words, dtype=np.int64)
        n = words.shape[1]
        if n > self.depth:
            raise ValueError(f"explicit table only defined up to depth {self.depth}")
        powers = self.k ** np.arange(n - 1, -1, -1, dtype=np.int64)
        return self.tables[n - 1][words @ powers]

    def log_tables(self, n_max, budget=TABLE_BUDGET):
        if n_max > self.depth:
            raise ValueError(f"explicit table only defined up to depth {self.depth}")
        for n in range(1, n_max + 1):
            yield n, self.tables[n - 1]

    def describe(self):
        return {"kind": self.kind, "k": self.k, "depth": self.depth}


def markov_as_hidden(pi, Q):
    """Hidden-Markov blocks reproducing the chain ``(pi, Q)`` when ``pi Q = pi``."""
    Q = np.asarray(Q, dtype=float)
    k = Q.shape[0]
    mats = np.zeros((k, k, k))
    for a in range(k):
        mats[a, :, a] = Q[:, a]
    return HiddenMarkov(pi, mats)


def consistency_defect(weights, n_max):
    """Largest ``|sum_a nu(ua) - nu(u)|`` over ``|u| < n_max``."""
    worst = abs(np.exp(weights.log_table(1)).sum() - 1.0)
    prev = None
    for n, tab in weights.log_tables(n_max):
        if prev is not None:
            kids = np.exp(tab).reshape(-1, weights.k).sum(axis=1)
            worst = max(worst, float(np.max(np.abs(kids - np.exp(prev)))))
        prev = tab
    return worst


def cylinder_label(word):
    return word_str(word)
