"""Potential sequences ``(f_n)`` with exact evaluation on cylinders.

Every sequence declares ``window(n)``, the number of leading symbols that
determine ``f_n``.  Values over all words of that length form a *table*
indexed by lexicographic rank, so sup-norms and cylinder extrema are exact
maxima over finite arrays.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .shift import (
    TABLE_BUDGET,
    Point,
    as_word,
    check_budget,
    prefix_array,
    word_index,
    words_array,
)


def expand_table(table, k, extra):
    """Embed a table over ``L``-words into one over ``(L + extra)``-words."""
    if extra <= 0:
        return table
    return np.repeat(table, k**extra)


def _powers(k, r):
    return k ** np.arange(r - 1, -1, -1, dtype=np.int64)


class LocallyConstantPotential:
    """A function of the first ``r`` symbols, stored as a ``k**r`` table.

    ``r = 0`` is allowed and means a global constant.
    """

    def __init__(self, k, r, values):
        values = np.asarray(values, dtype=float).ravel()
        if k < 2:
            raise ValueError("alphabet needs at least two symbols")
        if r < 0:
            raise ValueError("window must be nonnegative")
        if values.size != k**r:
            raise ValueError(f"window-{r} potential over {k} symbols needs {k**r} values")
        if not np.all(np.isfinite(values)):
            raise ValueError("potential values must be finite")
        self.k = int(k)
        self.r = int(r)
        self.values = values
        self.values.setflags(write=False)

    @classmethod
    def from_function(cls, k, r, fn: Callable):
        vals = [fn(tuple(w)) for w in words_array(k, r).tolist()] if r else [fn(())]
        return cls(k, r, vals)

    @classmethod
    def from_mapping(cls, k, r, mapping):
        vals = np.full(k**r, np.nan)
        for w, v in mapping.items():
            vals[word_index(as_word(w), k)] = v
        if np.isnan(vals).any():
            raise ValueError("mapping does not cover every word")
        return cls(k, r, vals)

    @classmethod
    def constant(cls, k, c, r=1):
        return cls(k, r, np.full(k**r, float(c)))

    def __call__(self, word):
        w = as_word(word)
        return float(self.values[word_index(w[: self.r], self.k)])

    def eval_indices(self, words):
        """Values at a batch of words given as an int array ``(..., >= r)``."""
        words = np.asarray(words, dtype=np.int64)
        if self.r == 0:
            return np.full(words.shape[:-1], self.values[0])
        return self.values[words[..., : self.r] @ _powers(self.k, self.r)]

    def lift(self, r):
        """The same function viewed as depending on ``r >= self.r`` symbols."""
        if r < self.r:
            raise ValueError("cannot lift to a shorter window")
        return LocallyConstantPotential(self.k, r, expand_table(self.values, self.k, r - self.r))

    def _aligned(self, other):
        if isinstance(other, LocallyConstantPotential):
            if other.k != self.k:
                raise ValueError("alphabets differ")
            r = max(self.r, other.r)
            return self.lift(r).values, other.lift(r).values, r
        return self.values, float(other), self.r

    def __add__(self, other):
        a, b, r = self._aligned(other)
        return LocallyConstantPotential(self.k, r, a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, r = self._aligned(other)
        return LocallyConstantPotential(self.k, r, a - b)

    def __mul__(self, c):
        return LocallyConstantPotential(self.k, self.r, self.values * float(c))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def coboundary(self):
        """``q o sigma - q`` as a window-``(r + 1)`` potential."""
        k, r = self.k, self.r
        if r == 0:
            return LocallyConstantPotential(k, 1, np.zeros(k))
        # word w of length r+1: q(w[1:]) is the rank mod k^r, q(w[:-1]) is rank // k
        idx = np.arange(k ** (r + 1), dtype=np.int64)
        return LocallyConstantPotential(k, r + 1, self.values[idx % k**r] - self.values[idx // k])

    def mean(self):
        """Integral against the uniform Bernoulli measure."""
        return float(self.values.mean())

    def sup_norm(self):
        return float(np.max(np.abs(self.values)))

    def osc(self):
        return float(self.values.max() - self.values.min())

    def as_dict(self):
        return {"k": self.k, "r": self.r, "values": self.values.tolist()}

    def __repr__(self):
        return f"LocallyConstantPotential(k={self.k}, r={self.r})"


class PotentialSequence:
    """Interface for ``(f_n)``; subclasses implement ``window`` and ``eval_words``."""

    kind = "abstract"
    constant_in_x = False

    def __init__(self, k):
        self.k = int(k)

    def window(self, n: int) -> int:
        raise NotImplementedError

    def eval_words(self, words, n: int) -> np.ndarray:
        """``f_n`` at a batch of words, array ``(B, L)`` with ``L >= window(n)``."""
        raise NotImplementedError

    def eval_word(self, word, n: int) -> float:
        w = np.asarray([as_word(word)], dtype=np.int64)
        if w.shape[1] < self.window(n):
            raise ValueError(f"f_{n} needs {self.window(n)} symbols, got {w.shape[1]}")
        return float(self.eval_words(w, n)[0])

    def table(self, n: int, budget: int = TABLE_BUDGET) -> np.ndarray:
        """``f_n`` over all words of length ``window(n)``, in rank order."""
        return self.eval_words(words_array(self.k, self.window(n), budget), n)

    def tables(self, n_max: int, budget: int = TABLE_BUDGET) -> Iterator:
        """Yield ``(n, table(n))`` for ``n = 1..n_max``."""
        for n in range(1, n_max + 1):
            yield n, self.table(n, budget)

    def describe(self) -> dict:
        return {"kind": self.kind, "k": self.k}


class BirkhoffSequence(PotentialSequence):
    """``f_n = S_n phi`` for a locally constant ``phi``."""

    kind = "birkhoff"

    def __init__(self, base: LocallyConstantPotential):
        if base.r == 0:
            base = base.lift(1)
        super().__init__(base.k)
        self.base = base

    def window(self, n):
        return n + self.base.r - 1

    def eval_words(self, words, n):
        r = self.base.r
        words = np.asarray(words, dtype=np.int64)[:, : n + r - 1]
        idx = sliding_window_view(words, r, axis=1) @ _powers(self.k, r)
        vals = self.base.values[idx]
        # sequential left-to-right sum, the same order the tables use
        out = vals[:, 0].copy()
        for j in range(1, n):
            out += vals[:, j]
        return out

    def tables(self, n_max, budget=TABLE_BUDGET):
        k, r = self.k, self.base.r
        tab = self.base.values.copy()
        for n in range(1, n_max + 1):
            if n > 1:
                check_budget(f"Birkhoff table n={n}", k ** self.window(n), budget)
                tab = np.repeat(tab, k) + np.tile(self.base.values, k ** (n - 1))
            yield n, tab

    def table(self, n, budget=TABLE_BUDGET):
        check_budget(f"Birkhoff table n={n}", self.k ** self.window(n), budget)
        for m, tab in self.tables(n, budget):
            if m == n:
                return tab

    def extrema(self, n):
        """``(min, max)`` of ``S_n phi`` over all words by max-plus dynamic programming.

        Paths through the de Bruijn graph accumulate ``phi`` in the same
        left-to-right order as the tables, so the result matches them exactly.
        """
        k, r = self.k, self.base.r
        vals = self.base.values.reshape(-1, k)  # rows: (r-1)-prefix, cols: last symbol
        lo = hi = None
        for j in range(n):
            if j == 0:
                hi, lo = vals.copy(), vals.copy()
            else:
                # node of the new edge = its (r-1)-prefix, reached from the previous edge
                hi_prev = hi.reshape(k, -1).max(axis=0) if r > 1 else np.full(1, hi.max())
                lo_prev = lo.reshape(k, -1).min(axis=0) if r > 1 else np.full(1, lo.min())
                hi = hi_prev[:, None] + vals if r > 1 else hi_prev[0] + vals
                lo = lo_prev[:, None] + vals if r > 1 else lo_prev[0] + vals
        return float(lo.min()), float(hi.max())

    def describe(self):
        return {"kind": self.kind, "k": self.k, "potential": self.base.as_dict()}


class MeasureSequence(PotentialSequence):
    """``f_n = log nu(C_{x_1..x_n}) + n * offset``."""

    kind = "measure"

    def __init__(self, weights, offset: float = 0.0):
        super().__init__(weights.k)
        self.weights = weights
        self.offset = float(offset)

    def window(self, n):
        return n

    def eval_words(self, words, n):
        words = np.asarray(words, dtype=np.int64)[:, :n]
        return self.weights.log_weights(words) + n * self.offset

    def tables(self, n_max, budget=TABLE_BUDGET):
        for n, tab in self.weights.log_tables(n_max, budget):
            yield n, tab + n * self.offset

    def table(self, n, budget=TABLE_BUDGET):
        return self.weights.log_table(n, budget) + n * self.offset

    def describe(self):
        return {"kind": self.kind, "k": self.k, "weights": self.weights.describe(),
                "offset": self.offset}


class ExplicitSequence(PotentialSequence):
    """A sequence of constants ``f_n(x) = rule(n)``."""

    kind = "explicit"
    constant_in_x = True

    def __init__(self, k, rule: Callable[[int], float], name: str = "explicit"):
        super().__init__(k)
        self.rule = rule
        self.name = name

    @classmethod
    def sqrt(cls, k=2, scale=1.0):
        return cls(k, lambda n: scale * math.sqrt(n), name="sqrt" if scale == 1.0 else f"{scale}*sqrt")

    @classmethod
    def linear(cls, k, c):
        return cls(k, lambda n: c * n, name=f"{c}*n")

    def window(self, n):
        return 1

    def eval_words(self, words, n):
        return np.full(len(words), float(self.rule(n)))

    def table(self, n, budget=TABLE_BUDGET):
        return np.full(self.k, float(self.rule(n)))

    def describe(self):
        return {"kind": self.kind, "k": self.k, "rule": self.name}


class CombinedSequence(PotentialSequence):
    """``a * F + b * G + n * c``."""

    kind = "combined"

    def __init__(self, F: PotentialSequence, G: PotentialSequence, a=1.0, b=1.0, c=0.0):
        if F.k != G.k:
            raise ValueError("alphabets differ")
        super().__init__(F.k)
        self.F, self.G = F, G
        self.a, self.b, self.c = float(a), float(b), float(c)
        self.constant_in_x = F.constant_in_x and G.constant_in_x

    def window(self, n):
        return max(self.F.window(n), self.G.window(n))

    def eval_words(self, words, n):
        return (self.a * self.F.eval_words(words, n) + self.b * self.G.eval_words(words, n)
                + n * self.c)

    def _merge(self, n, tf, tg):
        wf, wg = self.F.window(n), self.G.window(n)
        W = max(wf, wg)
        tf = expand_table(tf, self.k, W - wf)
        tg = expand_table(tg, self.k, W - wg)
        return self.a * tf + self.b * tg + n * self.c

    def tables(self, n_max, budget=TABLE_BUDGET):
        for (n, tf), (_, tg) in zip(self.F.tables(n_max, budget), self.G.tables(n_max, budget)):
            check_budget(f"combined table n={n}", self.k ** self.window(n), budget)
            yield n, self._merge(n, tf, tg)

    def table(self, n, budget=TABLE_BUDGET):
        check_budget(f"combined table n={n}", self.k ** self.window(n), budget)
        return self._merge(n, self.F.table(n, budget), self.G.table(n, budget))

    def describe(self):
        return {"kind": self.kind, "k": self.k, "a": self.a, "b": self.b, "c": self.c,
                "F": self.F.describe(), "G": self.G.describe()}


def difference(F, G):
    """``F - G`` as a sequence."""
    return CombinedSequence(F, G, 1.0, -1.0, 0.0)


def eval_point(F: PotentialSequence, x: Point, n: int) -> float:
    """``f_n(x)`` from the first ``window(n)`` symbols of ``x``."""
    if n < 1:
        raise ValueError("n must be positive")
    return float(F.eval_words(prefix_array(x, F.window(n))[None, :], n)[0])


def eval_points(F: PotentialSequence, prefixes: np.ndarray, n: int) -> np.ndarray:
    """``f_n`` at many points given by stacked prefixes of length ``>= window(n)``."""
    return F.eval_words(prefixes[:, : F.window(n)], n)


def table_at(F: PotentialSequence, n: int, W: int, table=None, budget=TABLE_BUDGET):
    """``f_n`` over all words of length ``W >= window(n)``."""
    w = F.window(n)
    if W < w:
        raise ValueError(f"f_{n} needs {w} symbols")
    check_budget(f"table of f_{n} over {W}-words", F.k**W, budget)
    if table is None:
        table = F.table(n, budget)
    return expand_table(table, F.k, W - w)


def cylinder_extrema(F: PotentialSequence, w, n: int, budget: int = TABLE_BUDGET):
    """Exact ``(inf, sup)`` of ``f_n`` over the cylinder ``C_w`` with ``|w| = n``."""
    w = as_word(w)
    if len(w) != n:
        raise ValueError("cylinder word must have length n")
    extra = F.window(n) - n
    if extra <= 0:
        v = F.eval_word(w, n)
        return v, v
    check_budget(f"extensions of a {n}-cylinder", F.k**extra, budget)
    tails = words_array(F.k, extra, budget)
    words = np.hstack([np.broadcast_to(np.asarray(w, dtype=np.int64), (len(tails), n)), tails])
    vals = F.eval_words(words, n)
    return float(vals.min()), float(vals.max())


def cylinder_extrema_table(F: PotentialSequence, n: int, depth: int = None, table=None,
                           budget: int = TABLE_BUDGET):
    """Min and max of ``f_n`` over every ``depth``-cylinder (default ``depth = n``)."""
    depth = n if depth is None else depth
    W = max(F.window(n), depth)
    tab = table_at(F, n, W, table, budget).reshape(F.k**depth, -1)
    return tab.min(axis=1), tab.max(axis=1)


def sup_norm(F: PotentialSequence, n: int, budget: int = TABLE_BUDGET) -> float:
    """Exact ``||f_n||_inf``."""
    if hasattr(F, "extrema"):
        lo, hi = F.extrema(n)
        return max(abs(lo), abs(hi))
    return float(np.max(np.abs(F.table(n, budget))))


def sup_norm_series(F: PotentialSequence, N: int, budget: int = TABLE_BUDGET) -> np.ndarray:
    """``[||f_1||, ..., ||f_N||]``."""
    if hasattr(F, "extrema"):
        return np.array([sup_norm(F, n) for n in range(1, N + 1)])
    return np.array([np.max(np.abs(t)) for _, t in F.tables(N, budget)])
