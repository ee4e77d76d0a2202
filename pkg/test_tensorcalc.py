"""
Tests for tensor fields and the Poisson-Nijenhuis operations on one chart.
"""

import itertools
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add current directory to path
sys.path.insert(0, str(Path(__file__).parent))

from data.corpus import poisson_bivectors, so3_bivector, torsion_endo
from strategies import R1, R2, R3, bivectors, endos, oneforms, polys, scalars, vector_fields
from utils.errors import ChartMismatchError, DimensionError, IndexRangeError, NotABivectorError
from utils.symexpr import Poly
from utils.tensorcalc import (
    Bivector,
    EndoField,
    OneForm,
    Trivector,
    VectorField,
    cotangent_anchor_defect,
    d_function,
    deformed_anchor_defect,
    deformed_bracket,
    endo_compose_bivector,
    endo_dual,
    form_bracket,
    jacobiator,
    lie_bracket,
    lie_derivative_oneform,
    magri_morosi,
    nijenhuis_torsion,
    pairing,
    pn_manifold_check,
    poisson_bracket,
    schouten_square,
    sharp,
    torsion_on,
)

small_bivectors = bivectors(R3, max_terms=2, max_power=1)
small_polys = polys(R3, max_terms=2, max_power=2)


def scalar_endos(space):
    """f·id for random f; N∘P♯ is then antisymmetric for every P."""
    return polys(space, max_terms=2, max_power=1).map(lambda f: EndoField.scalar(space, f))


def perturbed_so3():
    """∂1∧∂2 + x2·∂2∧∂3, which is not Poisson."""
    return Bivector(R3, {(0, 1): 1, (1, 2): R3.coordinate(1)})


def d(i, space=R3):
    return OneForm.coordinate(space, i)


def e(i, space=R3):
    return VectorField.coordinate(space, i)


class TestFields:
    def test_vector_field_component_count(self):
        with pytest.raises(DimensionError):
            VectorField(R2, (R2.one(),))

    def test_bivector_stores_upper_triangle(self):
        P = Bivector(R2, {(1, 0): R2.coordinate(0)})
        assert P.components == {(0, 1): -R2.coordinate(0)}
        assert P.entry(1, 0) == R2.coordinate(0)
        assert P.entry(0, 0).is_zero()

    def test_bivector_rejects_nonzero_diagonal(self):
        with pytest.raises(IndexRangeError):
            Bivector(R2, {(1, 1): 1})

    def test_trivector_antisymmetry(self):
        T = Trivector(R3, {(0, 1, 2): 1})
        assert T.entry(1, 0, 2) == -1
        assert T.entry(2, 0, 1) == 1

    def test_one_dimensional_chart_has_no_bivectors(self):
        assert Bivector(R1).is_zero()
        assert all(v.passed for v in pn_manifold_check(Bivector(R1), EndoField.identity(R1)))

    def test_chart_mismatch(self):
        with pytest.raises(ChartMismatchError):
            lie_bracket(e(0, R2), e(0, R3))


class TestLieBracket:
    def test_self_bracket_vanishes(self):
        X = VectorField(R2, (R2.coordinate(1) ** 2, R2.coordinate(0)))
        assert lie_bracket(X, X).is_zero()

    def test_coordinate_field_and_linear_field(self):
        x1, _ = R2.coordinates()
        assert lie_bracket(e(0, R2), VectorField(R2, (x1, 0))) == e(0, R2)

    def test_hand_expansion(self):
        x1, x2 = R2.coordinates()
        X = VectorField(R2, (x2, 0))
        Y = VectorField(R2, (0, x1))
        assert lie_bracket(X, Y) == VectorField(R2, (-x1, x2))

    @given(vector_fields(R3), vector_fields(R3))
    def test_antisymmetry(self, X, Y):
        assert lie_bracket(X, Y) == -lie_bracket(Y, X)

    @settings(max_examples=25)
    @given(vector_fields(R3, max_terms=2), vector_fields(R3, max_terms=2), vector_fields(R3, max_terms=2))
    def test_jacobi_identity(self, X, Y, Z):
        total = (lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X))
                 + lie_bracket(Z, lie_bracket(X, Y)))
        assert total.is_zero()


class TestSchouten:
    def test_constant_bivector(self):
        P = Bivector(R3, {(0, 1): 2, (1, 2): Fraction(-1, 3)})
        assert schouten_square(P).is_zero()

    def test_so3_is_poisson(self):
        assert schouten_square(so3_bivector(R3)).is_zero()

    def test_perturbed_witness(self):
        P = perturbed_so3()
        x1, x2, x3 = R3.coordinates()
        assert jacobiator(P, x1, x2, x3) == 1
        assert schouten_square(P).entry(0, 1, 2) == 2

    def test_jacobiator_with_repeated_function(self):
        f, h = R3.coordinate(0) * R3.coordinate(2), R3.coordinate(1)
        assert jacobiator(so3_bivector(R3), f, f, h).is_zero()
        assert jacobiator(perturbed_so3(), f, f, h).is_zero()

    @settings(max_examples=25)
    @given(small_bivectors, small_polys, small_polys, small_polys)
    def test_square_is_twice_the_jacobiator(self, P, f, g, h):
        square = schouten_square(P)
        assert square.apply(d_function(f), d_function(g), d_function(h)) == 2 * jacobiator(P, f, g, h)


class TestSharpAndDual:
    def test_sharp_of_coordinate_differential(self):
        assert sharp(Bivector(R2, {(0, 1): 1}), d(0, R2)) == e(1, R2)

    def test_sharp_of_zero_bivector(self):
        a = OneForm(R2, (R2.coordinate(1), 3))
        assert sharp(Bivector(R2), a).is_zero()

    @given(bivectors(R3), oneforms(R3), oneforms(R3))
    def test_sharp_antisymmetry(self, P, a, b):
        assert pairing(a, sharp(P, b)) == -pairing(b, sharp(P, a))
        assert pairing(b, sharp(P, a)) == P.pair(a, b)

    def test_dual_of_identity_and_zero(self):
        a = OneForm(R2, (R2.coordinate(0), Fraction(1, 2)))
        assert endo_dual(EndoField.identity(R2), a) == a
        assert endo_dual(EndoField.zero(R2), a).is_zero()

    @given(endos(R3, max_terms=2), oneforms(R3, max_terms=2), vector_fields(R3, max_terms=2))
    def test_duality(self, N, a, X):
        assert pairing(endo_dual(N, a), X) == pairing(a, N.apply(X))


class TestCompose:
    def test_scalar_constant(self):
        P = so3_bivector(R3)
        result = endo_compose_bivector(EndoField.scalar(R3, 3), P)
        assert result.ok
        assert result.bivector == P.scale(3)

    def test_identity(self):
        P = so3_bivector(R3)
        assert endo_compose_bivector(EndoField.identity(R3), P).bivector == P

    def test_distinct_diagonal_constants(self):
        a, b = Fraction(2), Fraction(5)
        result = endo_compose_bivector(EndoField.diagonal(R2, [a, b]), Bivector(R2, {(0, 1): 1}))
        assert not result.ok
        assert result.witness == b - a
        assert result.indices == (0, 1)

    @given(bivectors(R3, max_terms=2), scalar_endos(R3), oneforms(R3, max_terms=2))
    def test_sharp_of_composite(self, P, N, a):
        NP = endo_compose_bivector(N, P).bivector
        assert sharp(NP, a) == N.apply(sharp(P, a))
        assert sharp(P, N.dual(a)) == N.apply(sharp(P, a))


class TestTorsion:
    def test_identity(self):
        assert nijenhuis_torsion(EndoField.identity(R3)).is_zero()

    def test_constant_coefficients(self):
        N = EndoField.from_entries(R3, {(0, 1): 2, (2, 0): -1, (1, 1): Fraction(1, 2)})
        assert nijenhuis_torsion(N).is_zero()

    def test_hand_expansion(self):
        _, x2 = R2.coordinates()
        N = EndoField.diagonal(R2, [x2, 1])
        assert nijenhuis_torsion(N).component(0, 1) == VectorField(R2, (x2 - 1, 0))

    def test_first_nonzero(self):
        _, x2, _ = R3.coordinates()
        i, j, k, value = nijenhuis_torsion(torsion_endo(R3)).first_nonzero()
        assert (i, j, k) == (0, 1, 0)
        assert value == x2 - 1

    @given(endos(R3, max_terms=2, max_power=1))
    def test_array_is_antisymmetric_in_lower_indices(self, N):
        T = nijenhuis_torsion(N).array()
        assert len(T) == len(T[0]) == len(T[0][0]) == 3
        for k, i, j in itertools.product(range(3), repeat=3):
            assert T[k][i][j] == -T[k][j][i]
            assert T[k][i][j] == torsion_on(N, VectorField.coordinate(R3, i), VectorField.coordinate(R3, j))[k]

    @given(endos(R3, max_terms=2, max_power=1), vector_fields(R3, max_terms=2),
           vector_fields(R3, max_terms=2), polys(R3, max_terms=2))
    def test_tensoriality(self, N, X, Y, f):
        assert torsion_on(N, X.scale(f), Y) == torsion_on(N, X, Y).scale(f)

    @given(endos(R3, max_terms=2, max_power=1), vector_fields(R3, max_terms=2), vector_fields(R3, max_terms=2))
    def test_anchor_defect_is_minus_torsion(self, N, X, Y):
        assert deformed_anchor_defect(N, X, Y) == -torsion_on(N, X, Y)


class TestDeformedBracket:
    @given(vector_fields(R3), vector_fields(R3))
    def test_identity_gives_lie_bracket(self, X, Y):
        assert deformed_bracket(EndoField.identity(R3), X, Y) == lie_bracket(X, Y)

    @given(vector_fields(R3), vector_fields(R3))
    def test_zero_endo(self, X, Y):
        assert deformed_bracket(EndoField.zero(R3), X, Y).is_zero()

    @given(scalars(), vector_fields(R3), vector_fields(R3))
    def test_scalar_constant(self, c, X, Y):
        assert deformed_bracket(EndoField.scalar(R3, c), X, Y) == lie_bracket(X, Y).scale(c)


class TestFormBracket:
    def test_differential(self):
        x1, x2 = R2.coordinates()
        assert d_function(Poly.constant(R2, 7)).is_zero()
        assert d_function(x1 * x2) == OneForm(R2, (x2, x1))

    @given(polys(R3), polys(R3))
    def test_differential_is_linear(self, f, g):
        assert d_function(f + g) == d_function(f) + d_function(g)

    def test_lie_derivative_examples(self):
        x1, _ = R2.coordinates()
        assert lie_derivative_oneform(VectorField(R2, (1, 2)), OneForm(R2, (3, -1))).is_zero()
        assert lie_derivative_oneform(e(0, R2), OneForm(R2, (0, x1))) == d(1, R2)
        assert lie_derivative_oneform(VectorField(R2, (x1, 0)), d(0, R2)) == d(0, R2)

    def test_vanishing_cases(self):
        a, b = OneForm(R3, (1, 2, 0)), OneForm(R3, (0, -1, 5))
        assert form_bracket(Bivector(R3), OneForm(R3, tuple(R3.coordinates())), b).is_zero()
        assert form_bracket(Bivector(R3, {(0, 2): 4}), a, b).is_zero()

    def test_so3_coordinate_differentials(self):
        assert form_bracket(so3_bivector(R3), d(0), d(1)) == d(2)

    @given(bivectors(R3, max_terms=2), oneforms(R3, max_terms=2), oneforms(R3, max_terms=2))
    def test_antisymmetry(self, P, a, b):
        assert form_bracket(P, a, b) == -form_bracket(P, b, a)

    @given(bivectors(R3, max_terms=2, max_power=1), oneforms(R3, max_terms=2),
           oneforms(R3, max_terms=2), polys(R3, max_terms=2))
    def test_leibniz_rule(self, P, a, b, f):
        expected = form_bracket(P, a, b).scale(f) + b.scale(sharp(P, a).derive(f))
        assert form_bracket(P, a, b.scale(f)) == expected

    @settings(max_examples=10)
    @given(st.sampled_from(poisson_bivectors(seed=0, count=10) + [so3_bivector(R3)]),
           small_polys, small_polys)
    def test_differentials_bracket_to_differential(self, P, f, g):
        assert schouten_square(P).is_zero()
        assert form_bracket(P, d_function(f), d_function(g)) == d_function(poisson_bracket(P, f, g))

    @settings(max_examples=10)
    @given(st.sampled_from(poisson_bivectors(seed=1, count=10)), oneforms(R3, max_terms=2),
           oneforms(R3, max_terms=2))
    def test_cotangent_anchor_of_poisson_structure(self, P, a, b):
        assert cotangent_anchor_defect(P, a, b).is_zero()

    def test_cotangent_anchor_of_non_poisson_structure(self):
        assert not cotangent_anchor_defect(perturbed_so3(), d(0), d(1)).is_zero()


class TestMagriMorosi:
    @given(bivectors(R3, max_terms=2, max_power=1), oneforms(R3, max_terms=2), oneforms(R3, max_terms=2))
    def test_identity_vanishes(self, P, a, b):
        assert magri_morosi(P, EndoField.identity(R3), a, b).is_zero()

    @given(scalars())
    def test_scalar_constant_on_constant_bivector(self, c):
        P = Bivector(R2, {(0, 1): 1})
        assert magri_morosi(P, EndoField.scalar(R2, c), d(0, R2), d(1, R2)).is_zero()

    def test_not_a_bivector(self):
        _, x2 = R2.coordinates()
        N = EndoField.diagonal(R2, [x2, 1])
        with pytest.raises(NotABivectorError) as excinfo:
            magri_morosi(Bivector(R2, {(0, 1): 1}), N, d(0, R2), d(1, R2))
        assert excinfo.value.witness == 1 - x2
        assert excinfo.value.indices == (0, 1)

    def test_golden_value(self):
        x3 = R3.coordinate(2)
        N = EndoField.diagonal(R3, [x3, x3, 0])
        assert magri_morosi(Bivector(R3, {(0, 1): 1}), N, d(0), d(1)) == d(2)

    @given(bivectors(R3, max_terms=2, max_power=1), scalar_endos(R3), oneforms(R3, max_terms=2),
           oneforms(R3, max_terms=2))
    def test_antisymmetry(self, P, N, a, b):
        assert magri_morosi(P, N, a, b) == -magri_morosi(P, N, b, a)

    @settings(max_examples=25)
    @given(bivectors(R3, max_terms=2, max_power=1), scalar_endos(R3), oneforms(R3, max_terms=1),
           oneforms(R3, max_terms=1), polys(R3, max_terms=2, max_power=1))
    def test_function_linearity(self, P, N, a, b, f):
        assert magri_morosi(P, N, a.scale(f), b) == magri_morosi(P, N, a, b).scale(f)


class TestPNCheck:
    def test_symplectic_plane_with_identity(self):
        verdicts = pn_manifold_check(Bivector(R2, {(0, 1): 1}), EndoField.identity(R2))
        assert [v.verdict for v in verdicts] == ['pass'] * 4

    def test_non_poisson_fails_first_item_only(self):
        verdicts = pn_manifold_check(perturbed_so3(), EndoField.identity(R3))
        assert [v.verdict for v in verdicts] == ['fail', 'pass', 'pass', 'pass']
        assert verdicts[0].witness_label == 'Jac(x1, x2, x3)'
        assert verdicts[0].witness == 1

    @pytest.mark.parametrize('c', [1, 2, Fraction(-1, 3)])
    def test_so3_with_scalar(self, c):
        verdicts = pn_manifold_check(so3_bivector(R3), EndoField.scalar(R3, c))
        assert all(v.passed for v in verdicts)

    def test_torsion_witness(self):
        verdicts = pn_manifold_check(Bivector(R3), torsion_endo(R3))
        assert verdicts[1].verdict == 'fail'
        assert verdicts[1].witness_label == 'τN(∂x1, ∂x2)^x1'
        assert verdicts[1].witness == R3.coordinate(1) - 1

    def test_concomitant_errors_without_composite(self):
        verdicts = pn_manifold_check(Bivector(R2, {(0, 1): 1}), EndoField.diagonal(R2, [1, 2]))
        assert [v.verdict for v in verdicts] == ['pass', 'pass', 'fail', 'error']
        assert verdicts[2].witness == 1
        assert verdicts[3].witness == 1

    def test_concomitant_witness(self):
        x3 = R3.coordinate(2)
        verdicts = pn_manifold_check(Bivector(R3, {(0, 1): 1}), EndoField.diagonal(R3, [x3, x3, 0]))
        assert verdicts[3].verdict == 'fail'
        assert verdicts[3].witness_label == 'C(dx1, dx2)_x3'
        assert verdicts[3].witness == 1
