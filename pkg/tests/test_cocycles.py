import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonadditive.cocycles import (
    CocycleSequence,
    MatrixGenerator,
    cocycle_product,
    distortion_report,
    fl_inequality_check,
    inverse_batch,
    kln_test,
    log_norm_table,
    matrix_norm,
)
from nonadditive.corpus import random_generator, row_stochastic_generator
from nonadditive.potentials import BirkhoffSequence, LocallyConstantPotential as LCP
from nonadditive.regularity import almost_additivity_constant
from nonadditive.shift import enumerate_words

from strategies import potentials


def naive_product(A, w):
    B = np.eye(A.d)
    for j in range(len(w) - A.r + 1):
        idx = 0
        for a in w[j:j + A.r]:
            idx = idx * A.k + a
        B = A.mats[idx] @ B
    return B


generators = st.builds(
    lambda seed, d: MatrixGenerator(2, np.random.default_rng(seed).uniform(0.2, 2.0, (2, d, d))),
    st.integers(0, 10_000), st.integers(1, 2))


def test_product_examples():
    phi = LCP(2, 1, [0.3, -0.7])
    A = MatrixGenerator.scalar(2, phi.values)
    w = (0, 1, 1, 0, 1)
    assert cocycle_product(A, w)[0, 0] == pytest.approx(np.exp(0.3 * 2 - 0.7 * 3))
    G = random_generator()
    assert np.array_equal(cocycle_product(G, (1,)), G.mats[1])
    # c (J + delta I) generators: powers have closed form via the eigen split
    c, delta = 0.5, 0.25
    A = MatrixGenerator(2, [c * (np.ones((2, 2)) + delta * np.eye(2))] * 2)
    n = 6
    J = np.ones((2, 2))
    want = c**n * (delta**n * np.eye(2) + ((2 + delta) ** n - delta**n) / 2 * J)
    assert cocycle_product(A, (0,) * n) == pytest.approx(want, rel=1e-12)


def test_long_words_use_log_safe_path():
    G = random_generator()
    w = tuple(np.random.default_rng(1).integers(0, 2, 100))
    B = cocycle_product(G, w)
    assert B == pytest.approx(naive_product(G, w), rel=1e-9)


def test_matrix_norm():
    assert matrix_norm(np.eye(2)) == 2
    assert matrix_norm(np.ones((2, 2))) == 4
    B = np.array([[1.0, -2.0], [0.5, 3.0]])
    assert matrix_norm(-3 * B) == pytest.approx(3 * matrix_norm(B))


def test_cocycle_identity_exhaustive():
    A = random_generator()
    assert A.d == 2 and A.k == 2
    for total in range(2, 11):
        for w in enumerate_words(2, total):
            w = tuple(w)
            for m in range(1, total):
                lhs = cocycle_product(A, w)
                rhs = cocycle_product(A, w[m:]) @ cocycle_product(A, w[:m])
                assert np.allclose(lhs, rhs, rtol=1e-12, atol=0)


@given(potentials(max_r=2), st.integers(1, 9))
@settings(max_examples=30)
def test_scalar_reduction_to_birkhoff(phi, n):
    A = MatrixGenerator.scalar(phi.k, phi.values, phi.r)
    S, B = CocycleSequence(A), BirkhoffSequence(phi)
    assert np.max(np.abs(S.table(n) - B.table(n))) <= 1e-9


@given(generators, st.integers(1, 7))
@settings(max_examples=20)
def test_table_matches_explicit_products(A, n):
    S = CocycleSequence(A)
    assert np.allclose(S.table(n), log_norm_table(A, n), rtol=0, atol=1e-10)
    w = np.random.default_rng(n).integers(0, 2, (5, n))
    assert np.allclose(S.eval_words(w, n),
                       [np.log(matrix_norm(naive_product(A, tuple(x)))) for x in w])


def test_row_stochastic_bounded():
    A = row_stochastic_generator()
    assert np.allclose(A.mats.sum(axis=2), 1)
    # rows summing to one fix the all-ones vector, so every product has norm d
    for n, t in CocycleSequence(A).tables(12):
        assert np.allclose(t, np.log(A.d), atol=1e-12)


@given(generators)
@settings(max_examples=15)
def test_almost_additivity_bound(A):
    c = almost_additivity_constant(CocycleSequence(A), 10)
    assert c.C_hat >= 0
    assert c.C_hat <= -np.log(A.M) + np.log(A.d) + 1e-9


def test_inverse_batch():
    rng = np.random.default_rng(3)
    for d in (1, 2, 3):
        B = rng.uniform(0.1, 1.0, (6, d, d))
        assert np.allclose(inverse_batch(B) @ B, np.eye(d), atol=1e-10)
    with pytest.raises(ValueError):
        inverse_batch(np.ones((1, 4, 4)))


@given(generators)
@settings(max_examples=10)
def test_fl_no_violations(A):
    r = fl_inequality_check(A, 5)
    assert r.violations == 0 and r.worst_margin >= -1e-9


def test_fl_examples():
    A = MatrixGenerator.scalar(2, [0.0, 1.0])
    r = fl_inequality_check(A, 4)
    assert r.violations == 0
    # scalar: lhs equals the ratio exactly, so the margin is (1 - M) * ratio >= 0
    assert r.worst_margin >= 0
    assert fl_inequality_check(random_generator(), 6).violations == 0


def test_distortion_window_one_is_identity():
    A = random_generator()
    r = distortion_report(A, 0, 6)
    assert r.series == pytest.approx([np.log(A.d)] * 6)
    r = distortion_report(MatrixGenerator.scalar(2, [0.3, -1.0]), 1, 5)
    assert r.series == pytest.approx([0.0] * 5, abs=1e-12)


def test_distortion_window_two_bounded():
    mats = np.random.default_rng(11).uniform(0.3, 1.5, (4, 2, 2))
    A = MatrixGenerator(2, mats, window=2)
    r = distortion_report(A, 0, 8)
    # oracle: brute force over pairs that share the first n symbols
    for n in (1, 3, 5):
        best = -np.inf
        for u in itertools.product(range(2), repeat=n):
            prods = [naive_product(A, u + (a,)) for a in range(2)]
            for P1 in prods:
                for P2 in prods:
                    best = max(best, np.log(matrix_norm(P1 @ np.linalg.inv(P2))))
        assert r.series[n - 1] == pytest.approx(best, rel=1e-9)
    assert r.bounded.holds


def test_kln_row_stochastic():
    r = kln_test(row_stochastic_generator(), 8, 12)
    assert np.isfinite(r.K_tilde) and r.K <= r.K_tilde + 1e-12
    assert r.hypothesis_holds and r.verdict == "global-bound"


def test_kln_scaled_generators_fail_hypothesis():
    A = row_stochastic_generator()
    r = kln_test(MatrixGenerator(2, A.mats * np.e**0.5), 8, 12)
    assert not r.hypothesis_holds and r.verdict == "hypothesis-fails"


def test_kln_scalar_coboundary():
    q = LCP(2, 1, [0.4, -0.3])
    f = q.coboundary()
    A = MatrixGenerator.scalar(2, f.values, f.r)
    r = kln_test(A, 6, 12)
    qn = np.max(np.abs(q.values))
    assert r.K <= 2 * qn + 1e-9 and r.K_tilde <= 2 * qn + 1e-9
