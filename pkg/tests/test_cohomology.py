import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonadditive.cohomology import (
    bousch_decompose,
    livsic_certificate,
    mean_cycle,
    periodic_mean_optimum,
    rotation_demo,
    solve_coboundary,
    transfer_apply,
    transitive_coboundary_crosscheck,
    weak_coboundary_check,
)
from nonadditive.corpus import karp_corpus, livsic_corpus
from nonadditive.potentials import LocallyConstantPotential as LCP
from nonadditive.shift import Point

from strategies import dyadic, potentials


def brute_cycle_mean(phi, P, direction):
    """Optimal periodic average over all words of length <= P, exact."""
    k, r = phi.k, phi.r
    best = None
    for q in range(1, P + 1):
        for w in itertools.product(range(k), repeat=q):
            x = w * (r + 1)
            s = sum(Fraction(phi(x[j:j + r])) for j in range(q)) / q
            if best is None or (s > best if direction == "max" else s < best):
                best = s
    return best


def test_certificate_examples():
    q = LCP(2, 2, [0.4, -0.9, 0.1, 0.7])
    assert livsic_certificate(q.coboundary(), 5).value <= 1e-12
    assert livsic_certificate(LCP.constant(2, 0.35), 4).value == pytest.approx(1.4)
    r = livsic_certificate(LCP(2, 1, [1.0, -1.0]), 3)
    assert r.value == 3.0 and r.point == str(Point((), (0,)))


@given(potentials(max_r=2), st.integers(1, 6))
@settings(max_examples=20)
def test_certificate_vanishes_on_coboundaries(q, P):
    assert livsic_certificate(q.coboundary(), P).value <= 1e-9


def test_solve_examples():
    rng = np.random.default_rng(5)
    q = LCP(2, 2, rng.uniform(-1, 1, size=4))
    s = solve_coboundary(q.coboundary() + 0.3)
    assert s.feasible and s.c == pytest.approx(0.3, abs=1e-9)
    assert np.ptp(s.q.values - q.values) <= 1e-9
    s = solve_coboundary(LCP.constant(2, 0.0, 2))
    assert s.feasible and abs(s.c) <= 1e-12 and np.max(np.abs(s.q.values)) <= 1e-12
    s = solve_coboundary(LCP(2, 1, [1.0, -1.0]))
    assert not (s.feasible and abs(s.c) <= 1e-9)


@given(potentials(max_r=2), st.floats(-2, 2))
@settings(max_examples=30)
def test_solve_round_trip(q, c):
    s = solve_coboundary(q.coboundary() + c)
    assert s.feasible
    assert s.c == pytest.approx(c, abs=1e-9)
    assert np.ptp(s.q.lift(q.r).values - q.values) <= 1e-9


def test_livsic_biconditional_on_corpus():
    for case in livsic_corpus():
        s = solve_coboundary(case.phi)
        feasible = s.feasible and abs(s.c) <= 1e-9
        cert = livsic_certificate(case.phi, case.phi.r + 2).value <= 1e-9
        assert feasible == cert == case.is_coboundary


def test_transitive_crosscheck_agrees_on_coboundary():
    q = LCP(2, 2, [0.4, -0.9, 0.1, 0.7])
    assert transitive_coboundary_crosscheck(q.coboundary(), 4) <= 1e-9


def test_mean_cycle_examples():
    phi = LCP(2, 1, [1.0, -1.0])
    r = mean_cycle(phi, "max")
    assert r.value == 1.0 and r.cycle == (0,)
    r = mean_cycle(phi, "min")
    assert r.value == -1.0 and r.cycle == (1,)
    r = mean_cycle(LCP.from_function(2, 2, lambda w: float(w[0] != w[1])), "max")
    assert r.value == 1.0 and r.cycle == (0, 1)


@pytest.mark.parametrize("i", range(30))
def test_karp_equals_brute_force_on_corpus(i):
    phi = karp_corpus()[i]
    for direction in ("max", "min"):
        r = mean_cycle(phi, direction)
        assert r.exact == periodic_mean_optimum(phi, 8, direction)[0]


@given(potentials(k=2, max_r=3, elements=dyadic))
@settings(max_examples=30)
def test_karp_property(phi):
    for direction in ("max", "min"):
        r = mean_cycle(phi, direction)
        assert r.exact == brute_cycle_mean(phi, 2 ** max(phi.r - 1, 1) + 1, direction)
        # the reported cycle attains the value
        w = r.cycle
        x = w * (phi.r + 1)
        s = sum(Fraction(phi(x[j:j + phi.r])) for j in range(len(w))) / len(w)
        assert s == r.exact


def test_weak_coboundary_examples():
    assert weak_coboundary_check(LCP(2, 2, [0.4, -0.9, 0.1, 0.7]).coboundary())
    assert not weak_coboundary_check(LCP.constant(2, 0.1))
    phi = LCP(2, 2, [1.0, -1.0, -1.0, 1.0])
    assert not weak_coboundary_check(phi) and mean_cycle(phi, "max").value == 1.0


def test_transfer_apply_examples():
    assert np.all(transfer_apply(LCP.constant(2, 0.6)).values == 0.6)
    assert np.all(transfer_apply(LCP(2, 1, [1.0, -1.0])).values == 0)
    t = transfer_apply(LCP.from_function(2, 2, lambda w: float(w[0] == 0)))
    assert list(t.values) == [0.5, 0.5]


@given(potentials(max_r=3))
@settings(max_examples=30)
def test_transfer_apply_oracle(f):
    t = transfer_apply(f)
    k = f.k
    for y in itertools.product(range(k), repeat=max(f.r - 1, 1)):
        want = sum(f(((a,) + y)[: f.r]) for a in range(k)) / k
        assert t(y) == pytest.approx(want, abs=1e-12)


def test_decomposition_examples():
    d = bousch_decompose(LCP.constant(2, 0.4, 2))
    assert np.max(np.abs(d.u.values)) <= 1e-12 and np.max(np.abs(d.g.values)) <= 1e-12
    assert d.c == pytest.approx(0.4)
    u = LCP(2, 2, [0.4, -0.9, 0.1, 0.7])
    d = bousch_decompose(u.coboundary())
    assert np.ptp(d.u.values - u.values) <= 1e-9 and np.max(np.abs(d.g.values)) <= 1e-9
    d = bousch_decompose(LCP(2, 1, [1.0, -1.0]))
    assert list(d.g.values) == [1.0, -1.0] and d.c == 0


@given(potentials(max_r=3))
@settings(max_examples=30)
def test_decomposition_invariants(phi):
    d = bousch_decompose(phi)
    assert d.residual <= 1e-9
    assert d.kernel_residual <= 1e-9
    assert abs(d.u.values.sum()) <= 1e-9


def test_rotation_examples():
    r = rotation_demo("1/2", [(1, 1.0, 0.0)], 64, 40)
    assert r.integral == 0 and abs(r.series[1]) <= 1e-12
    assert r.sup == pytest.approx(1.0) and r.eventually_periodic
    r = rotation_demo("0/1", [(1, 1.0, 0.0)], 64, 20)
    assert r.series == pytest.approx(list(range(1, 21)))
    r = rotation_demo("0.6180339887498949", [(1, 1.0, 0.0)], 256, 10_000)
    assert not r.rational and r.sup < 2.0


def test_rotation_integral_of_constant_term():
    r = rotation_demo("1/3", [(0, 0.5, 0.0), (1, 1.0, 0.0)], 30, 12)
    assert r.integral == 0.5
    # cos(2 pi x) summed over a full 1/3 orbit vanishes
    assert r.series[2] <= 1e-12
