"""
Tests for charts and exact polynomial arithmetic.
"""

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings

# Add current directory to path
sys.path.insert(0, str(Path(__file__).parent))

from strategies import R2, R3, coordinate_indices, points, polys
from utils.constants import FD_STEP, ORACLE_TOLERANCE
from utils.errors import ChartMismatchError, DimensionError, IndexRangeError
from utils.symexpr import ChartSpace, Poly, evaluate, linear_combination, partial, poly_arith


class TestChartSpace:
    def test_euclidean_names(self):
        assert ChartSpace.euclidean(3).coord_names == ('x1', 'x2', 'x3')

    def test_rejects_duplicate_names(self):
        with pytest.raises(ValueError):
            ChartSpace(('a', 'a'))

    def test_rejects_invalid_identifier(self):
        with pytest.raises(ValueError):
            ChartSpace(('x1', '2y'))

    def test_rejects_empty_chart(self):
        with pytest.raises(DimensionError):
            ChartSpace(())

    def test_index_by_name_and_position(self):
        M = ChartSpace(('p', 'q'))
        assert M.index('q') == 1
        assert M.index(0) == 0

    def test_index_out_of_range(self):
        with pytest.raises(IndexRangeError):
            R2.index(2)
        with pytest.raises(IndexRangeError):
            R2.index('x3')

    def test_equality_ignores_display_name(self):
        assert ChartSpace(('x1', 'x2'), name='M') == ChartSpace(('x1', 'x2'), name='N')


class TestPolyArith:
    def test_add_zero_is_identity(self):
        x1, x2 = R2.coordinates()
        p = x1 * x2 + Fraction(1, 3)
        assert poly_arith(p, R2.zero(), 'add') == p

    def test_difference_of_squares(self):
        x1, _ = R2.coordinates()
        assert poly_arith(x1 + 1, x1 - 1, 'mul') == x1 ** 2 - 1

    def test_cancellation_gives_canonical_zero(self):
        x1, x2 = R2.coordinates()
        p = x1 ** 2 * x2 - 3
        difference = poly_arith(p, p, 'sub')
        assert difference.is_zero()
        assert dict(difference.terms) == {}

    def test_chart_mismatch(self):
        with pytest.raises(ChartMismatchError):
            poly_arith(R2.coordinate(0), R3.coordinate(0), 'add')

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            poly_arith(R2.one(), R2.one(), 'div')

    def test_zero_coefficients_are_dropped(self):
        p = Poly(R2, {(1, 0): 0, (0, 1): Fraction(2, 4)})
        assert dict(p.terms) == {(0, 1): Fraction(1, 2)}

    def test_immutable(self):
        with pytest.raises(AttributeError):
            R2.one().space = R3

    def test_scalar_coercion(self):
        x1, _ = R2.coordinates()
        assert 2 - x1 == -(x1 - 2)
        assert Fraction(1, 2) * x1 == x1 * Fraction(1, 2)

    def test_linear_combination(self):
        x1, x2 = R2.coordinates()
        assert linear_combination([x2, Poly.constant(R2, 3)], [x1, x2], R2) == x1 * x2 + 3 * x2

    @settings(max_examples=100)
    @given(polys(R3), polys(R3), polys(R3))
    def test_ring_axioms(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r


class TestPartial:
    def test_constant(self):
        assert partial(Poly.constant(R2, 7), 0).is_zero()

    def test_power_rule(self):
        x1, x2 = R2.coordinates()
        assert partial(x1 ** 2 * x2, 0) == 2 * x1 * x2

    def test_by_name(self):
        x1, x2 = R2.coordinates()
        assert partial(x1 * x2 ** 3, 'x2') == 3 * x1 * x2 ** 2

    def test_index_out_of_range(self):
        with pytest.raises(IndexRangeError):
            partial(R2.one(), 5)

    @given(polys(R3))
    def test_clairaut(self, p):
        assert partial(partial(p, 0), 1) == partial(partial(p, 1), 0)
        assert partial(partial(p, 1), 2) == partial(partial(p, 2), 1)

    @given(polys(R3), polys(R3), coordinate_indices(R3))
    def test_leibniz(self, p, q, i):
        assert partial(p * q, i) == p * partial(q, i) + q * partial(p, i)

    @settings(max_examples=100)
    @given(polys(R3, max_power=3), points(R3), coordinate_indices(R3))
    def test_matches_central_difference(self, p, point, i):
        exact = float(evaluate(partial(p, i), point))
        at = np.array([float(c) for c in point])
        step = np.zeros(3)
        step[i] = FD_STEP
        exps, coeffs = p.float_terms()
        value = lambda x: float(coeffs @ np.prod(x ** exps, axis=1)) if len(coeffs) else 0.0
        approx = (value(at + step) - value(at - step)) / (2 * FD_STEP)
        assert abs(approx - exact) / max(1.0, abs(exact)) < ORACLE_TOLERANCE


class TestEvaluate:
    def test_sum_at_rational_point(self):
        x1, x2 = R2.coordinates()
        assert evaluate(x1 + x2, (Fraction(1, 2), Fraction(1, 3))) == Fraction(5, 6)

    def test_zero(self):
        assert evaluate(R2.zero(), (Fraction(3), Fraction(-2, 7))) == 0

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            evaluate(R2.one(), (1,))

    @given(polys(R2), polys(R2), points(R2))
    def test_is_a_ring_homomorphism(self, p, q, point):
        assert evaluate(p * q, point) == evaluate(p, point) * evaluate(q, point)
        assert evaluate(p - q, point) == evaluate(p, point) - evaluate(q, point)


class TestCompose:
    def test_substitution(self):
        x1, x2 = R2.coordinates()
        p = x1 ** 2 + x2
        assert p.compose([x1 + x2, x1]) == x1 ** 2 + 2 * x1 * x2 + x2 ** 2 + x1

    def test_embeds_into_larger_chart(self):
        x1, x2 = R2.coordinates()
        y1, y2, y3 = R3.coordinates()
        image = (x1 * x2).compose([y2, y3])
        assert image == y2 * y3
        assert image.space == R3

    def test_wrong_number_of_images(self):
        with pytest.raises(DimensionError):
            R2.coordinate(0).compose([R2.coordinate(0)])

    @given(polys(R2), polys(R2), polys(R2), points(R2))
    def test_commutes_with_evaluation(self, p, f, g, point):
        inner = (evaluate(f, point), evaluate(g, point))
        assert evaluate(p.compose([f, g]), point) == evaluate(p, inner)


class TestPrinting:
    def test_canonical_order(self):
        x1, x2 = R2.coordinates()
        assert (x1 * (x2 + Fraction(3, 2)) ** 2).to_expr() == 'x1*x2^2 + 3*x1*x2 + 9/4*x1'

    def test_negative_leading_term(self):
        x1, x2 = R2.coordinates()
        assert (Fraction(-1, 2) * x2 + 1).to_expr() == '-1/2*x2 + 1'

    def test_zero(self):
        assert R3.zero().to_expr() == '0'

