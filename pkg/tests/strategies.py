"""Shared hypothesis strategies."""

import numpy as np
from hypothesis import strategies as st

from nonadditive.potentials import LocallyConstantPotential
from nonadditive.shift import Point

values = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
dyadic = st.integers(-16, 16).map(lambda v: v / 8.0)


@st.composite
def potentials(draw, k=None, r=None, elements=values, max_r=2):
    k = draw(st.sampled_from([2, 3])) if k is None else k
    r = draw(st.integers(1, max_r if k == 2 else min(max_r, 2))) if r is None else r
    vals = draw(st.lists(elements, min_size=k**r, max_size=k**r))
    return LocallyConstantPotential(k, r, np.array(vals))


@st.composite
def words(draw, k=2, min_size=1, max_size=8):
    return tuple(draw(st.lists(st.integers(0, k - 1), min_size=min_size, max_size=max_size)))


@st.composite
def points(draw, k=2):
    pre = draw(words(k, 0, 5))
    per = draw(words(k, 1, 4))
    return Point(pre, per)
