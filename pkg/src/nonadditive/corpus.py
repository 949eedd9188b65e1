"""Deterministic test corpora.

Every builder seeds its own generator, so the same call always returns the
same objects regardless of what ran before.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cocycles import CocycleSequence, MatrixGenerator
from .families import recentered_type1, type1_sequence
from .measures import Bernoulli, HiddenMarkov, Markov
from .potentials import BirkhoffSequence, LocallyConstantPotential, MeasureSequence
from .pressure import rpf_equilibrium


def _rng(seed):
    return np.random.default_rng(seed)


def _stochastic(rng, k, floor=0.1):
    Q = rng.uniform(floor, 1.0, size=(k, k))
    return Q / Q.sum(axis=1, keepdims=True)


def _stationary(Q):
    w, v = np.linalg.eig(Q.T)
    pi = np.real(v[:, np.argmin(np.abs(w - 1))])
    return pi / pi.sum()


def pressure_corpus(seed=101):
    """20 potentials over two symbols: ten of window 1, ten of window 2."""
    rng = _rng(seed)
    out = []
    for i in range(20):
        r = 1 if i < 10 else 2
        out.append(LocallyConstantPotential(2, r, rng.normal(0.0, 1.0, size=2**r)))
    return out


@dataclass
class CoboundaryCase:
    q: LocallyConstantPotential
    f: LocallyConstantPotential


def coboundary_corpus(seed=202, count=50):
    """``f = q o sigma - q`` with ``q`` of window 1 or 2; three symbols only for window 1."""
    rng = _rng(seed)
    out = []
    for i in range(count):
        k, rq = [(2, 1), (2, 2), (3, 1)][i % 3]
        q = LocallyConstantPotential(k, rq, rng.uniform(-1.0, 1.0, size=k**rq))
        out.append(CoboundaryCase(q, q.coboundary()))
    return out


def karp_corpus(seed=303, count=30):
    """Dyadic-valued potentials (multiples of 1/8) of window 1-3 with at most 8 graph nodes."""
    rng = _rng(seed)
    shapes = [(2, 1), (2, 2), (2, 3), (3, 2), (3, 1)]
    out = []
    for i in range(count):
        k, r = shapes[i % len(shapes)]
        out.append(LocallyConstantPotential(k, r, rng.integers(-16, 17, size=k**r) / 8.0))
    return out


@dataclass
class LivsicCase:
    phi: LocallyConstantPotential
    is_coboundary: bool


def livsic_corpus(seed=404, count=100):
    """Half coboundaries, half not.

    Non-coboundaries alternate between generic random values and a
    coboundary with one word nudged by a small amount, the hard case for a
    periodic certificate.
    """
    rng = _rng(seed)
    out = []
    shapes = [(2, 1), (2, 2), (3, 1)]
    for i in range(count // 2):
        k, rq = shapes[i % 3]
        q = LocallyConstantPotential(k, rq, rng.uniform(-1.0, 1.0, size=k**rq))
        out.append(LivsicCase(q.coboundary(), True))
    for i in range(count - count // 2):
        k, r = [(2, 1), (2, 2), (2, 3), (3, 2)][i % 4]
        if i % 2:
            base = LocallyConstantPotential(k, r - 1, rng.uniform(-1, 1, size=k ** (r - 1)))
            vals = base.coboundary().values.copy() if r > 1 else np.zeros(k)
            vals[rng.integers(k**r)] += 0.01 * rng.choice([-1.0, 1.0])
        else:
            vals = rng.uniform(-1.0, 1.0, size=k**r)
        out.append(LivsicCase(LocallyConstantPotential(k, r, vals), False))
    return out


def row_stochastic_generator(seed=505, k=2, d=2):
    rng = _rng(seed)
    return MatrixGenerator(k, np.stack([_stochastic(rng, d) for _ in range(k)]))


def random_generator(seed=606, k=2, d=2, low=0.2, high=2.0):
    rng = _rng(seed)
    return MatrixGenerator(k, rng.uniform(low, high, size=(k, d, d)))


def hidden_markov_example(seed=707):
    """A positive two-state hidden Markov measure over two symbols."""
    rng = _rng(seed)
    T = _stochastic(rng, 2, floor=0.2)
    E = rng.uniform(0.2, 0.8, size=2)
    emit = np.stack([E, 1 - E], axis=1)  # emit[state, symbol]
    mats = np.stack([T * emit[None, :, a] for a in range(2)])
    return HiddenMarkov(_stationary(T), mats)


def almost_additive_corpus(seed=808):
    """``(name, sequence)`` pairs used by the battery coherence check."""
    rng = _rng(seed)
    out = []
    for i in range(3):
        q = LocallyConstantPotential(2, 1 + i % 2, rng.uniform(-1, 1, size=2 ** (1 + i % 2)))
        out.append((f"coboundary-{i}", BirkhoffSequence(q.coboundary())))
    out.append(("bernoulli", MeasureSequence(Bernoulli([0.3, 0.7]))))
    Q = _stochastic(rng, 2)
    out.append(("markov", MeasureSequence(Markov(_stationary(Q), Q))))
    out.append(("hidden-markov", MeasureSequence(hidden_markov_example())))
    for i in range(2):
        phi = LocallyConstantPotential(2, 2, rng.normal(0, 1, size=4))
        out.append((f"type1-{i}", type1_sequence(phi)))
        out.append((f"type1-recentered-{i}", recentered_type1(phi)))
    for i in range(2):
        out.append((f"cocycle-stochastic-{i}",
                    CocycleSequence(row_stochastic_generator(seed + 10 + i))))
    return out


@dataclass
class GibbsPair:
    name: str
    weights: object
    F: object
    P_value: float


def gibbs_pairs(seed=909):
    """Measures with a sequence they are Gibbs for, and the sequence's pressure."""
    rng = _rng(seed)
    out = [GibbsPair("bernoulli-half", Bernoulli([0.5, 0.5]),
                     BirkhoffSequence(LocallyConstantPotential.constant(2, -np.log(2))), 0.0)]
    p = np.array([0.2, 0.8])
    out.append(GibbsPair("bernoulli", Bernoulli(p),
                         BirkhoffSequence(LocallyConstantPotential(2, 1, np.log(p))), 0.0))
    Q = _stochastic(rng, 2)
    out.append(GibbsPair("markov", Markov(_stationary(Q), Q),
                         BirkhoffSequence(LocallyConstantPotential(2, 2, np.log(Q).ravel())), 0.0))
    Q3 = _stochastic(rng, 3)
    out.append(GibbsPair("markov-3", Markov(_stationary(Q3), Q3),
                         BirkhoffSequence(LocallyConstantPotential(3, 2, np.log(Q3).ravel())), 0.0))
    for i in range(2):
        phi = LocallyConstantPotential(2, 2, rng.normal(0, 1, size=4))
        mm = rpf_equilibrium(phi)
        out.append(GibbsPair(f"rpf-{i}", mm.weights(), BirkhoffSequence(phi), mm.pressure))
    return out
