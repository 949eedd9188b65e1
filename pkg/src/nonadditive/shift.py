"""Exact symbolic dynamics on the one-sided full shift over ``k`` symbols.

Words are tuples of ints in ``range(k)``.  Points are eventually periodic
sequences, stored as a preperiod word followed by a repeating period word,
and are kept in canonical form so that equality is symbol-wise.

The metric is ``d(x, y) = 2 ** -i`` where ``i`` is the first 1-based index
at which ``x`` and ``y`` disagree.  Consequently the Bowen distance
``d_n(x, y)`` is below ``2 ** -(s + 1)`` exactly when ``x`` and ``y`` share
their first ``n + s`` symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import BudgetExceeded

# Python-object enumerations (lists of tuples).
DEFAULT_BUDGET = 2**22
# Dense numpy tables of sequence values over all words of one length.
TABLE_BUDGET = 2**26

Word = tuple
WordLike = Union[str, Sequence[int]]


def check_budget(what, items, budget):
    if items > budget:
        raise BudgetExceeded(what, items, budget)


def as_word(w: WordLike) -> Word:
    """Coerce ``"0110"`` or any int sequence into a word tuple."""
    if isinstance(w, str):
        return tuple(int(c) for c in w)
    return tuple(int(c) for c in w)


def word_str(w: Sequence[int]) -> str:
    return "".join(str(int(c)) for c in w)


def word_index(w: Sequence[int], k: int) -> int:
    """Lexicographic rank of ``w`` among words of its length."""
    idx = 0
    for c in w:
        idx = idx * k + int(c)
    return idx


def index_word(idx: int, k: int, n: int) -> Word:
    out = [0] * n
    for j in range(n - 1, -1, -1):
        idx, out[j] = divmod(idx, k)
    return tuple(out)


def _primitive_root(w: Word) -> Word:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


@dataclass(frozen=True)
class Point:
    """An eventually periodic point ``preperiod + period period period ...``."""

    preperiod: Word
    period: Word

    def __post_init__(self):
        pre = as_word(self.preperiod)
        per = as_word(self.period)
        if not per:
            raise ValueError("period word must be nonempty")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            per = (pre[-1],) + per[:-1]
            pre = pre[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def periodic(cls, word: WordLike) -> "Point":
        return cls((), as_word(word))

    def symbol(self, i: int) -> int:
        """Symbol at 0-based position ``i``."""
        pre = self.preperiod
        if i < len(pre):
            return pre[i]
        return self.period[(i - len(pre)) % len(self.period)]

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod

    def __str__(self):
        return f"{word_str(self.preperiod)}({word_str(self.period)})^inf"


def shift(x: Point, m: int) -> Point:
    """Return ``sigma^m(x)``."""
    if m < 0:
        raise ValueError("shift count must be nonnegative")
    pre, per = x.preperiod, x.period
    if m <= len(pre):
        return Point(pre[m:], per)
    r = (m - len(pre)) % len(per)
    return Point((), per[r:] + per[:r])


def cylinder_prefix(x: Point, n: int) -> Word:
    """First ``n`` symbols of ``x``."""
    return tuple(x.symbol(i) for i in range(n))


def prefix_array(x: Point, n: int) -> np.ndarray:
    return np.fromiter((x.symbol(i) for i in range(n)), dtype=np.int64, count=n)


def first_difference(x: Point, y: Point):
    """1-based index of the first disagreement, or ``None`` when ``x == y``."""
    q = len(x.period) * len(y.period) // gcd(len(x.period), len(y.period))
    horizon = max(len(x.preperiod), len(y.preperiod)) + q
    for i in range(horizon):
        if x.symbol(i) != y.symbol(i):
            return i + 1
    return None


def distance(x: Point, y: Point) -> float:
    i = first_difference(x, y)
    return 0.0 if i is None else 2.0 ** (-i)


def bowen_distance(x: Point, y: Point, n: int) -> float:
    """``d_n(x, y) = max_{0 <= j < n} d(sigma^j x, sigma^j y)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return max(distance(shift(x, j), shift(y, j)) for j in range(n))


def enumerate_words(k: int, n: int, budget: int = DEFAULT_BUDGET) -> list:
    """All ``k**n`` words of length ``n`` in lexicographic order."""
    check_budget(f"words of length {n} over {k} symbols", k**n, budget)
    out = [()]
    for _ in range(n):
        out = [w + (a,) for w in out for a in range(k)]
    return out


def words_array(k: int, n: int, budget: int = TABLE_BUDGET) -> np.ndarray:
    """All words of length ``n`` as a ``(k**n, n)`` array, row ``i`` = rank ``i``."""
    check_budget(f"word array of length {n} over {k} symbols", k**n, budget)
    idx = np.arange(k**n, dtype=np.int64)
    out = np.empty((k**n, n), dtype=np.int64)
    for j in range(n - 1, -1, -1):
        idx, out[:, j] = np.divmod(idx, k)
    return out


def lyndon_words(k: int, n: int) -> Iterator[Word]:
    """Lyndon words of length exactly ``n`` (Duval's algorithm), in lexicographic order."""
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            yield tuple(w)
        while len(w) < n:
            w.append(w[-m])
        while w and w[-1] == k - 1:
            w.pop()


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def primitive_orbit_count(k: int, q: int) -> int:
    """Number of periodic orbits of exact period ``q`` (Moebius necklace count)."""
    total = sum(_mobius(d) * k ** (q // d) for d in range(1, q + 1) if q % d == 0)
    return total // q


def enumerate_periodic_points(k: int, P: int, budget: int = DEFAULT_BUDGET) -> list:
    """One representative per periodic orbit of primitive period ``q <= P``.

    Returns ``(point, q)`` pairs ordered by ``q`` and then lexicographically;
    each representative is the least rotation of its period word.
    """
    check_budget(f"periodic orbits up to period {P}", k**P, budget)
    out = []
    for q in range(1, P + 1):
        out.extend((Point.periodic(w), q) for w in lyndon_words(k, q))
    return out


def orbit(p: Point) -> list:
    """All points of the orbit of a periodic point, starting from ``p``."""
    if not p.is_periodic:
        raise ValueError("orbit() expects a periodic point")
    return [shift(p, j) for j in range(len(p.period))]


def shadow_periodic(x: Point, n: int) -> Point:
    """Closing lemma on the full shift: periodize the first ``n`` symbols."""
    if n < 1:
        raise ValueError("n must be positive")
    return Point.periodic(cylinder_prefix(x, n))


def transitive_prefix(k: int, L: int, budget: int = DEFAULT_BUDGET) -> Word:
    """Concatenation of all words of lengths ``1..L`` in lexicographic order."""
    total = sum(m * k**m for m in range(1, L + 1))
    check_budget(f"transitive prefix of depth {L}", total, budget)
    out: list = []
    for m in range(1, L + 1):
        for w in enumerate_words(k, m, budget):
            out.extend(w)
    return tuple(out)


def transitive_point(k: int, L: int, budget: int = DEFAULT_BUDGET) -> Point:
    """Finite-depth stand-in for a point with dense orbit."""
    return Point(transitive_prefix(k, L, budget), (0,))


def factors(w: Sequence[int], m: int) -> set:
    return {tuple(w[i:i + m]) for i in range(len(w) - m + 1)}


def periodic_prefixes(points: Iterable[Point], length: int) -> np.ndarray:
    """Stack the first ``length`` symbols of each point into a 2-d array."""
    rows = [prefix_array(p, length) for p in points]
    if not rows:
        return np.zeros((0, length), dtype=np.int64)
    return np.vstack(rows)
