"""
Hypothesis strategies for charts, polynomials and tensor fields.

Sizes are kept small: exact expansion of Schouten squares and concomitants
grows quickly with the number of terms.
"""

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from utils.symexpr import ChartSpace, Poly
from utils.tensorcalc import Bivector, EndoField, OneForm, VectorField

R1 = ChartSpace.euclidean(1)
R2 = ChartSpace.euclidean(2)
R3 = ChartSpace.euclidean(3)


def rationals(bound: int = 3, max_denominator: int = 4):
    return st.fractions(min_value=-bound, max_value=bound, max_denominator=max_denominator)


def exponents(dim: int, max_power: int = 2):
    return st.tuples(*[st.integers(min_value=0, max_value=max_power)] * dim)


def polys(space: ChartSpace, max_terms: int = 4, max_power: int = 2):
    return st.dictionaries(exponents(space.dim, max_power), rationals(), max_size=max_terms).map(
        lambda terms: Poly(space, terms)
    )


def points(space: ChartSpace, max_denominator: int = 64):
    return st.tuples(*[st.fractions(min_value=-1, max_value=1, max_denominator=max_denominator)] * space.dim)


def coordinate_indices(space: ChartSpace):
    return st.integers(min_value=0, max_value=space.dim - 1)


def vector_fields(space: ChartSpace, **kwargs):
    return st.tuples(*[polys(space, **kwargs)] * space.dim).map(lambda c: VectorField(space, c))


def oneforms(space: ChartSpace, **kwargs):
    return st.tuples(*[polys(space, **kwargs)] * space.dim).map(lambda c: OneForm(space, c))


def bivectors(space: ChartSpace, **kwargs):
    pairs = list(itertools.combinations(range(space.dim), 2))
    return st.tuples(*[polys(space, **kwargs)] * len(pairs)).map(
        lambda values: Bivector(space, dict(zip(pairs, values)))
    )


def endos(space: ChartSpace, **kwargs):
    n = space.dim
    row = st.tuples(*[polys(space, **kwargs)] * n)
    return st.tuples(*[row] * n).map(lambda rows: EndoField(space, rows))


def constant_endos(space: ChartSpace):
    return endos(space, max_terms=1, max_power=0)


def scalars():
    return st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(lambda c: c != Fraction(0))
