import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonadditive.corpus import almost_additive_corpus, hidden_markov_example
from nonadditive.families import (
    dither,
    fit_increments,
    holder_perturbation,
    lemma_ubi_check,
    recentered_type1,
    type1_sequence,
    weights_eval,
    classify_sequence,
)
from nonadditive.measures import Bernoulli, HiddenMarkov, Markov
from nonadditive.potentials import BirkhoffSequence, ExplicitSequence, MeasureSequence
from nonadditive.potentials import LocallyConstantPotential as LCP
from nonadditive.pressure import rpf_equilibrium
from nonadditive.regularity import bou_battery

from strategies import potentials


def test_weights_eval_examples():
    assert weights_eval(Bernoulli([0.5, 0.5]), (0, 1, 1, 0)) == pytest.approx(4 * np.log(0.5))
    pi, Q = np.array([0.25, 0.75]), np.array([[0.5, 0.5], [1 / 6, 5 / 6]])
    assert weights_eval(Markov(pi, Q), (0, 1)) == pytest.approx(np.log(0.25 * 0.5))
    # a Markov chain written as a hidden Markov model with one-hot emissions
    mats = [np.column_stack([Q[:, 0], np.zeros(2)]), np.column_stack([np.zeros(2), Q[:, 1]])]
    H = HiddenMarkov(pi, mats)
    M = Markov(pi, Q)
    for w in [(0,), (1, 0, 1), (1, 1, 0, 0, 1)]:
        assert weights_eval(H, w) == pytest.approx(weights_eval(M, w), abs=1e-12)


def test_dither_is_deterministic_signs():
    d = dither(np.arange(1024), 10)
    assert set(np.unique(d)) == {-1.0, 1.0}
    assert np.array_equal(d, dither(np.arange(1024), 10))
    assert not np.array_equal(d, dither(np.arange(1024), 11))
    # roughly balanced
    assert abs(d.sum()) < 200


@given(potentials(max_r=2), st.floats(0.01, 2.0))
@settings(max_examples=20)
def test_perturbation_within_alpha(phi, alpha):
    F = BirkhoffSequence(phi)
    G = holder_perturbation(F, alpha)
    for n in range(1, 9):
        W = G.window(n)
        tf = F.table(n)
        tf = np.repeat(tf, phi.k ** (W - F.window(n)))
        diff = np.abs(G.table(n) - tf)
        assert np.allclose(diff, alpha)


def test_perturbation_examples():
    F = BirkhoffSequence(LCP(2, 1, [0.2, -0.1]))
    assert holder_perturbation(F, 0.0) is F
    G = holder_perturbation(F, 1.0)
    words = np.random.default_rng(0).integers(0, 2, (20, 10))
    for n in (3, 7, 10):
        assert np.allclose(np.abs(G.eval_words(words, n) - F.eval_words(words, n)), 1.0)
        assert np.allclose(G.eval_words(words, n), G.table(n)[words[:, :n] @ (2 ** np.arange(n - 1, -1, -1))])


def test_perturbation_keeps_cond1_verdict():
    for name, F in almost_additive_corpus()[:4]:
        a = bou_battery(F, 16, 8)
        b = bou_battery(holder_perturbation(F, 0.5), 16, 8)
        assert a.cond1.holds == b.cond1.holds, name


def test_type1_examples():
    phi = LCP.constant(2, -np.log(2))
    F = type1_sequence(phi)
    for n in range(1, 10):
        assert np.max(np.abs(F.table(n) - BirkhoffSequence(phi).table(n))) <= 1e-12
    rng = np.random.default_rng(4)
    Q = rng.uniform(0.2, 1, (2, 2))
    Q /= Q.sum(axis=1, keepdims=True)
    phi = LCP(2, 2, np.log(Q).ravel())
    R = recentered_type1(phi)
    pi = rpf_equilibrium(phi).pi
    # S_n phi reads one symbol past the cylinder: f_n - S_n phi = log pi_a - log Q_bc
    bound = np.max(np.abs(np.log(pi[:, None, None] / Q[None, :, :])))
    for n in range(1, 12):
        t = R.table(n)
        assert np.max(np.abs(t)) <= bound + 1e-9
        w = np.arange(2 ** (n + 1))
        a, b, c = w >> n, (w >> 1) & 1, w & 1
        assert np.allclose(t, np.log(pi[a]) - np.log(Q[b, c]))


@given(potentials(k=2, max_r=2))
@settings(max_examples=15)
def test_type1_bounded_difference(phi):
    R = recentered_type1(phi)
    sups = [float(np.max(np.abs(t))) for _, t in R.tables(20)]
    # stationary start: the difference is a log ratio of eigenvector entries, so flat in n
    assert max(sups) - sups[phi.r] <= 1e-9


def test_classify_examples():
    phi = LCP(2, 2, [0.3, -0.2, 0.5, 0.1])
    c = classify_sequence(type1_sequence(phi), [phi], N=12)
    assert c.label == "Type1"
    c = classify_sequence(ExplicitSequence.sqrt(2), N=12)
    assert c.label == "unclassified" and not c.almost_additive
    G = holder_perturbation(type1_sequence(phi), 0.3)
    c = classify_sequence(G, [phi], N=12)
    assert c.label == "Type1"
    assert c.candidates[0].sup_diff <= 0.3 + 3.0


def test_classify_default_pool_finds_birkhoff():
    phi = LCP(2, 2, [0.3, -0.2, 0.5, 0.1])
    c = classify_sequence(BirkhoffSequence(phi), N=12)
    assert c.label == "Type1" and c.pool_size == 3


def test_fit_increments_recovers_potential():
    phi = LCP(2, 2, [0.3, -0.2, 0.5, 0.1])
    fit = fit_increments(BirkhoffSequence(phi), 2)
    assert np.allclose(fit.values, phi.values)


def test_ubi_examples():
    q = LCP(2, 2, [0.4, -0.9, 0.1, 0.7])
    r = lemma_ubi_check(BirkhoffSequence(q.coboundary()), 6, 12)
    assert r.hypothesis_met and r.C_hat <= 1e-12
    assert r.item1_holds and r.item2_holds and r.item1_max <= 1e-12

    phi = LCP(2, 2, [0.3, -0.2, 0.5, 0.1])
    mm = rpf_equilibrium(phi)
    r = lemma_ubi_check(recentered_type1(phi), 6, 12, measures=[mm])
    assert r.hypothesis_met and r.item1_holds and r.item2_holds and r.item3_holds

    r = lemma_ubi_check(BirkhoffSequence(LCP(2, 1, [1.0, 0.5])), 6, 12)
    assert not r.hypothesis_met


def test_hidden_markov_sequence_is_almost_additive():
    H = hidden_markov_example()
    F = MeasureSequence(H)
    b = bou_battery(F, 16, 8)
    assert b.C_hat < 10 and b.verdict != "not-almost-additive"
