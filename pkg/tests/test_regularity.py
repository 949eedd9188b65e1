import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonadditive.cocycles import CocycleSequence
from nonadditive.corpus import almost_additive_corpus, random_generator
from nonadditive.families import holder_perturbation
from nonadditive.measures import Bernoulli, Markov
from nonadditive.potentials import (
    BirkhoffSequence,
    CombinedSequence,
    ExplicitSequence,
    LocallyConstantPotential as LCP,
    MeasureSequence,
)
from nonadditive.regularity import (
    almost_additivity_constant,
    bou_battery,
    perturbation_constant_check,
    physical_equivalence,
    variation,
    walters_check,
)
from nonadditive.shift import words_array

from strategies import potentials


def brute_aa(F, N):
    best = 0.0
    for t in range(2, N + 1):
        for n in range(1, t):
            m = t - n
            W = max(F.window(t), F.window(n), n + F.window(m))
            w = words_array(F.k, W)
            d = (F.eval_words(w[:, : F.window(t)], t) - F.eval_words(w[:, : F.window(n)], n)
                 - F.eval_words(w[:, n: n + F.window(m)], m))
            best = max(best, float(np.max(np.abs(d))))
    return best


def brute_gamma(F, n, s):
    W = max(F.window(n), n + s)
    vals = {}
    for w in itertools.product(range(F.k), repeat=W):
        v = F.eval_word(w[: F.window(n)], n)
        key = w[: n + s]
        lo, hi = vals.get(key, (v, v))
        vals[key] = (min(lo, v), max(hi, v))
    return max(hi - lo for lo, hi in vals.values())


@given(potentials(max_r=3))
@settings(max_examples=15)
def test_birkhoff_has_zero_defect(phi):
    assert almost_additivity_constant(BirkhoffSequence(phi), 8).C_hat <= 1e-9


def test_bernoulli_has_zero_defect():
    assert almost_additivity_constant(MeasureSequence(Bernoulli([0.3, 0.7])), 10).C_hat <= 1e-9


def test_markov_defect_matches_brute_force():
    M = MeasureSequence(Markov([6 / 13, 7 / 13], [[0.3, 0.7], [0.6, 0.4]]))
    assert almost_additivity_constant(M, 8).C_hat == pytest.approx(brute_aa(M, 8), abs=1e-12)


def test_cocycle_defect_within_log_bound():
    A = random_generator()
    C = almost_additivity_constant(CocycleSequence(A), 10).C_hat
    assert 0 < C <= -math.log(A.M)
    C7 = almost_additivity_constant(CocycleSequence(A), 7).C_hat
    assert C7 == pytest.approx(brute_aa(CocycleSequence(A), 7), abs=1e-12)
    assert C >= C7


def test_sqrt_defect_grows_past_three():
    r = almost_additivity_constant(ExplicitSequence.sqrt(2), 64)
    assert r.C_hat > 3
    # the worst split is the balanced one: sqrt(2n) - 2 sqrt(n)
    assert r.C_hat == pytest.approx(2 * math.sqrt(32) - math.sqrt(64))


@given(potentials(k=2, max_r=3), st.integers(0, 2))
@settings(max_examples=20)
def test_variation_matches_brute_force(phi, s):
    S = BirkhoffSequence(phi)
    rep = variation(S, s, 6)
    for n in range(1, 7):
        assert rep.gamma[n - 1] == pytest.approx(brute_gamma(S, n, s), abs=1e-12)


def test_variation_examples():
    assert max(variation(MeasureSequence(Bernoulli([0.3, 0.7])), 2, 8).gamma) == 0
    phi = LCP(2, 2, [0.3, -1.2, 0.5, 2.0])
    assert max(variation(BirkhoffSequence(phi), 1, 8).gamma) == 0
    g = variation(BirkhoffSequence(phi), 0, 10).gamma
    # worst single-step spread: max over a of |phi(a0) - phi(a1)|
    assert all(v == pytest.approx(1.5) for v in g)


def test_walters_examples():
    assert max(walters_check(MeasureSequence(Bernoulli([0.3, 0.7])), 6).values()) == 0
    w = walters_check(BirkhoffSequence(LCP(2, 3, np.linspace(-1, 1, 8))), 6, 3)
    assert w[2] == 0 and w[3] == 0 and w[0] > 0
    assert max(walters_check(ExplicitSequence.sqrt(2), 6).values()) == 0


def test_battery_coboundary():
    q = LCP(2, 2, [0.4, -0.9, 0.1, 0.7])
    b = bou_battery(BirkhoffSequence(q.coboundary()), 24, 12)
    assert (b.cond1.holds, b.cond2.holds, b.cond3.holds) == (True, True, True)
    assert b.K_hat <= 2 * q.sup_norm() + 1e-12
    assert b.verdict == "consistent"
    assert b.flags["envelope_holds"]


def test_battery_sqrt():
    b = bou_battery(ExplicitSequence.sqrt(2), 24, 12)
    assert (b.cond1.holds, b.cond2.holds, b.cond3.holds) == (True, False, False)
    assert b.verdict == "not-almost-additive"


def test_battery_nonzero_mean():
    b = bou_battery(BirkhoffSequence(LCP(2, 2, [0.5, -0.25, 0.75, 0.125])), 24, 12)
    assert (b.cond1.holds, b.cond2.holds, b.cond3.holds) == (False, False, False)


def test_battery_periodic_series_oracle():
    phi = LCP(2, 1, [0.3, -0.1])
    b = bou_battery(BirkhoffSequence(phi), 12, 4)
    # periodic sums: n/q * (sum of phi over one period); brute force over orbit words
    best = 0.0
    for q in range(1, 5):
        for w in itertools.product((0, 1), repeat=q):
            for n in range(q, 13, q):
                best = max(best, abs(sum(phi.values[w[j % q]] for j in range(n))))
    assert b.K_hat == pytest.approx(best, abs=1e-12)


@pytest.mark.parametrize("name,G", almost_additive_corpus()[:6], ids=lambda v: v if isinstance(v, str) else "")
def test_battery_flags_agree(name, G):
    b = bou_battery(G, 16, 8)
    assert len({b.cond1.holds, b.cond2.holds, b.cond3.holds}) == 1


def test_equivalence_examples():
    phi = LCP(2, 2, [0.3, -1.2, 0.5, 2.0])
    F = BirkhoffSequence(phi)
    assert physical_equivalence(F, F, 10).sup_diff == 0
    M = MeasureSequence(Bernoulli([0.5, 0.5]))
    G = BirkhoffSequence(LCP.constant(2, -math.log(2)))
    assert physical_equivalence(M, G, 10).sup_diff <= 1e-12
    q = LCP(2, 1, [0.8, -0.3])
    r = physical_equivalence(F, BirkhoffSequence(phi + q.coboundary()), 16)
    assert r.sup_diff <= 2 * q.sup_norm() + 1e-12
    assert r.physically_equivalent.holds and r.uniformly_bounded.holds


def test_equivalence_detects_drift():
    F = BirkhoffSequence(LCP(2, 1, [0.0, 0.0]))
    G = BirkhoffSequence(LCP(2, 1, [0.1, 0.1]))
    r = physical_equivalence(F, G, 16)
    assert not r.physically_equivalent.holds


def test_perturbation_examples():
    F = BirkhoffSequence(LCP(2, 2, [0.3, -1.2, 0.5, 2.0]))
    r = perturbation_constant_check(F, F, 10)
    assert r.applicable and r.holds and r.L == 0
    r = perturbation_constant_check(F, holder_perturbation(F, 0.5), 10)
    assert r.applicable and r.holds and r.L == pytest.approx(0.5)
    r = perturbation_constant_check(F, CombinedSequence(F, ExplicitSequence.sqrt(2)), 16)
    assert not r.applicable


@given(st.floats(0.0, 2.0))
@settings(max_examples=10)
def test_perturbation_bound_property(alpha):
    F = MeasureSequence(Markov([6 / 13, 7 / 13], [[0.3, 0.7], [0.6, 0.4]]))
    r = perturbation_constant_check(F, holder_perturbation(F, alpha), 8)
    assert r.holds
