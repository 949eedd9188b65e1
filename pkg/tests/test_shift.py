import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonadditive.errors import BudgetExceeded
from nonadditive.shift import (
    Point,
    bowen_distance,
    cylinder_prefix,
    distance,
    enumerate_periodic_points,
    enumerate_words,
    factors,
    first_difference,
    lyndon_words,
    orbit,
    primitive_orbit_count,
    shadow_periodic,
    shift,
    transitive_prefix,
    word_index,
    index_word,
)

from strategies import points, words


def P(pre, per):
    return Point(tuple(map(int, pre)), tuple(map(int, per)))


@pytest.mark.parametrize("pre,per,m,want", [
    ("01", "1", 2, ("", "1")),
    ("", "01", 1, ("", "10")),
    ("0", "01", 0, ("0", "01")),
])
def test_shift_examples(pre, per, m, want):
    assert shift(P(pre, per), m) == P(*want)


@pytest.mark.parametrize("pre,per,n,want", [("0", "1", 3, "011"), ("", "01", 4, "0101"),
                                           ("", "0", 1, "0")])
def test_prefix_examples(pre, per, n, want):
    assert "".join(map(str, cylinder_prefix(P(pre, per), n))) == want


def test_canonical_form_merges_equal_points():
    assert P("0101", "01") == P("", "01")
    assert P("1", "00") == P("1", "0")
    assert P("", "0110") != P("", "01")


def test_bowen_examples():
    x, y = P("", "0"), P("0001", "0")
    assert bowen_distance(x, x, 1) == 0
    assert bowen_distance(x, y, 1) == 2.0**-4
    assert bowen_distance(x, y, 3) == 2.0**-2


def _brute_symbols(x, n):
    return [x.symbol(i) for i in range(n)]


@given(points(), st.integers(0, 12))
def test_shift_matches_symbol_sequence(x, m):
    assert _brute_symbols(shift(x, m), 20) == _brute_symbols(x, m + 20)[m:]


@given(points(), points())
def test_distance_oracle(x, y):
    a, b = _brute_symbols(x, 60), _brute_symbols(y, 60)
    diff = next((i + 1 for i in range(60) if a[i] != b[i]), None)
    assert distance(x, y) == (0.0 if diff is None else 2.0**-diff)
    assert first_difference(x, y) == diff


@given(points(), points(), st.integers(1, 6))
def test_bowen_distance_is_max_over_shifts(x, y, n):
    assert bowen_distance(x, y, n) == max(distance(shift(x, j), shift(y, j)) for j in range(n))
    assert bowen_distance(x, y, n) >= distance(x, y)


def test_enumerate_words_examples():
    assert enumerate_words(2, 1) == [(0,), (1,)]
    assert enumerate_words(2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    w = enumerate_words(3, 2)
    assert len(w) == 9 and w[0] == (0, 0) and w[-1] == (2, 2)


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        enumerate_words(2, 10, budget=100)


@given(words(3, 1, 6))
def test_word_index_roundtrip(w):
    assert index_word(word_index(w, 3), 3, len(w)) == w


def _brute_orbits(k, P_):
    seen = set()
    for q in range(1, P_ + 1):
        for w in itertools.product(range(k), repeat=q):
            if any(q % d == 0 and w[:d] * (q // d) == w for d in range(1, q)):
                continue
            seen.add(min(w[i:] + w[:i] for i in range(q)))
    return seen


@pytest.mark.parametrize("k,P_", [(2, 1), (2, 2), (2, 4), (2, 7), (3, 4)])
def test_periodic_orbits_match_brute_force(k, P_):
    got = {p.period for p, _ in enumerate_periodic_points(k, P_)}
    assert got == _brute_orbits(k, P_)


def test_periodic_orbit_counts():
    assert len(enumerate_periodic_points(2, 1)) == 2
    assert len(enumerate_periodic_points(2, 2)) == 3
    assert len(enumerate_periodic_points(2, 4)) == 8
    assert [primitive_orbit_count(2, q) for q in range(1, 7)] == [2, 1, 2, 3, 6, 9]


@given(st.integers(1, 7))
def test_lyndon_words_are_least_rotations(n):
    for w in lyndon_words(2, n):
        assert all(w < w[i:] + w[:i] for i in range(1, n))


def test_orbit_has_period_many_points():
    p = P("", "0011")
    orb = orbit(p)
    assert len(orb) == 4 and len(set(orb)) == 4
    assert shift(p, 4) == p


def test_shadow_examples():
    assert shadow_periodic(P("", "01"), 2) == P("", "01")
    assert shadow_periodic(P("0", "1"), 3) == P("", "011")


@given(words(2, 1, 6), st.integers(0, 5), st.integers(0, 4))
def test_closing_lemma(head, s, extra):
    # a point whose first n + s symbols repeat with period n
    n = len(head)
    body = tuple(head[i % n] for i in range(n + s))
    x = Point(body + tuple([1 - head[0]] * extra), (0,))
    p = shadow_periodic(x, n)
    # x and p agree on n + s symbols, so every shift j < n agrees on n + s - j >= s + 1
    assert bowen_distance(x, p, n) <= 2.0 ** -(s + 1)
    assert bowen_distance(x, p, n) < 2.0**-s


def test_transitive_prefix_examples():
    assert transitive_prefix(2, 1) == (0, 1)
    assert "".join(map(str, transitive_prefix(2, 2))) == "0100011011"
    assert len(factors(transitive_prefix(2, 3), 3)) == 8
    assert len(factors(transitive_prefix(3, 2), 2)) == 9
