"""Shared hypothesis strategies for random exact rational measures."""

from fractions import Fraction

import hypothesis.strategies as st

from halfline.measures import LatticeMeasure

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=9)


@st.composite
def lattice_measures(draw, lo=-4, hi=4, allow_zero=True):
    """Random signed rational measure with support inside [lo, hi]."""
    sites = draw(
        st.lists(st.integers(min_value=lo, max_value=hi), min_size=0 if allow_zero else 1, max_size=hi - lo + 1, unique=True)
    )
    masses = {}
    for s in sites:
        masses[s] = draw(rationals)
    m = LatticeMeasure.from_sites(masses)
    if not allow_zero and m.is_zero:
        site = draw(st.integers(min_value=lo, max_value=hi))
        masses[site] = Fraction(1, 2)
        m = LatticeMeasure.from_sites(masses)
    return m


@st.composite
def nonpos_measures(draw, lo=-3):
    """Random signed rational measure supported in [lo, 0]."""
    return draw(lattice_measures(lo=lo, hi=0))


@st.composite
def probability_measures(draw, lo=-3, hi=3):
    """Random rational probability measure with support inside [lo, hi]."""
    sites = draw(
        st.lists(st.integers(min_value=lo, max_value=hi), min_size=1, max_size=hi - lo + 1, unique=True)
    )
    weights = {}
    for s in sites:
        weights[s] = draw(st.integers(min_value=0, max_value=9))
    total = sum(weights.values())
    if total == 0:
        weights[sites[0]] = 1
        total = 1
    masses = {s: Fraction(w, total) for s, w in weights.items() if w}
    return LatticeMeasure.from_sites(masses)
