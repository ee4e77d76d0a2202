"""
Tests for invariant extension, restriction and pushforward on the pair groupoid.
"""

import itertools
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings

# Add current directory to path
sys.path.insert(0, str(Path(__file__).parent))

from components.invariance import (
    classical_lift,
    extend_bivector,
    extend_endo,
    extend_oneform,
    extend_trivector,
    extend_vector,
    is_invariant,
    pushforward,
    restrict,
)
from components.pair_groupoid import PairGroupoid
from data.corpus import correspondence_corpus, so3_bivector, torsion_endo
from strategies import R1, R2, R3, bivectors, constant_endos, endos, oneforms, vector_fields
from utils.constants import CONVENTIONS
from utils.errors import NotSVerticalError
from utils.symexpr import Poly
from utils.tensorcalc import (
    Bivector,
    EndoField,
    OneForm,
    VectorField,
    endo_apply,
    endo_compose_bivector,
    lie_bracket,
    magri_morosi,
    nijenhuis_torsion,
    pairing,
    schouten_square,
)

G1 = PairGroupoid.over(R1)
G2 = PairGroupoid.over(R2)
G3 = PairGroupoid.over(R3)


def shear(space):
    """(x1, x2) ↦ (x1 + x2², x2) and its inverse."""
    x1, x2 = space.coordinates()
    return (x1 + x2 ** 2, x2), (x1 - x2 ** 2, x2)


class TestPushforward:
    def test_coordinate_field(self):
        phi, psi = shear(R2)
        x1, x2 = R2.coordinates()
        moved = pushforward(VectorField.coordinate(R2, 1), phi, psi)
        assert moved == VectorField(R2, (2 * x2, 1))

    def test_swap_moves_blocks(self):
        swap = G2.inversion()
        Pi = Bivector(G2.total, {(0, 1): 1})
        assert pushforward(Pi, swap, swap) == Bivector(G2.total, {(2, 3): 1})

    @settings(max_examples=25)
    @given(vector_fields(R2, max_terms=2), vector_fields(R2, max_terms=2))
    def test_preserves_lie_bracket(self, X, Y):
        phi, psi = shear(R2)
        assert pushforward(lie_bracket(X, Y), phi, psi) == lie_bracket(
            pushforward(X, phi, psi), pushforward(Y, phi, psi))

    @settings(max_examples=25)
    @given(oneforms(R2, max_terms=2), vector_fields(R2, max_terms=2))
    def test_preserves_pairing(self, a, X):
        phi, psi = shear(R2)
        assert pairing(pushforward(a, phi, psi), pushforward(X, phi, psi)) == pairing(a, X).compose(psi)

    @settings(max_examples=25)
    @given(endos(R2, max_terms=2), vector_fields(R2, max_terms=2))
    def test_endo_commutes_with_vectors(self, N, X):
        phi, psi = shear(R2)
        assert endo_apply(pushforward(N, phi, psi), pushforward(X, phi, psi)) == pushforward(
            endo_apply(N, X), phi, psi)


class TestExtension:
    def test_coordinate_field_on_line(self):
        extended = extend_vector(G1, VectorField.coordinate(R1, 0))
        assert extended == VectorField(G1.total, (1, 0))

    def test_left_coordinate_field_on_line(self):
        extended = extend_vector(G1, VectorField.coordinate(R1, 0), 'left')
        assert extended == VectorField(G1.total, (0, 1))

    def test_bivector(self):
        Pi = extend_bivector(G2, Bivector(R2, {(0, 1): 1}))
        assert Pi.components == {(0, 1): Poly.constant(G2.total, 1)}

    def test_zero_bivector(self):
        assert extend_bivector(G3, Bivector(R3)).is_zero()

    def test_identity_endo(self):
        assert extend_endo(G2, EndoField.identity(R2)) == EndoField.identity(G2.total)

    def test_endo_is_block_diagonal(self):
        N = extend_endo(G2, torsion_endo(R2))
        x2, y2 = G2.total.coordinate(1), G2.total.coordinate(3)
        assert N == EndoField.diagonal(G2.total, [x2, 1, y2, 1])

    @given(endos(R2, max_terms=2))
    def test_endo_same_for_both_conventions(self, n):
        assert extend_endo(G2, n, 'left') == extend_endo(G2, n, 'right')

    def test_invalid_convention(self):
        with pytest.raises(ValueError):
            extend_vector(G1, VectorField.coordinate(R1, 0), 'middle')

    @pytest.mark.parametrize('convention', CONVENTIONS)
    @settings(max_examples=25)
    @given(X=vector_fields(R2, max_terms=2), Y=vector_fields(R2, max_terms=2))
    def test_bracket_morphism(self, convention, X, Y):
        assert lie_bracket(extend_vector(G2, X, convention), extend_vector(G2, Y, convention)) == \
            extend_vector(G2, lie_bracket(X, Y), convention)

    @pytest.mark.parametrize('convention', CONVENTIONS)
    @settings(max_examples=25)
    @given(n=endos(R2, max_terms=2), X=vector_fields(R2, max_terms=2))
    def test_endo_acts_on_extended_fields(self, convention, n, X):
        assert endo_apply(extend_endo(G2, n, convention), extend_vector(G2, X, convention)) == \
            extend_vector(G2, endo_apply(n, X), convention)

    @pytest.mark.parametrize('convention', CONVENTIONS)
    def test_schouten_square_of_extension(self, convention):
        x2 = R3.coordinate(1)
        L = Bivector(R3, {(0, 1): 1, (1, 2): x2})
        assert schouten_square(extend_bivector(G3, L, convention)) == \
            extend_trivector(G3, schouten_square(L), convention)

    @settings(max_examples=10)
    @given(bivectors(R3, max_terms=2))
    def test_schouten_square_of_random_extension(self, L):
        assert schouten_square(extend_bivector(G3, L)) == extend_trivector(G3, schouten_square(L))

    def test_torsion_survives_extension(self):
        n = torsion_endo(R2)
        assert not nijenhuis_torsion(n).is_zero()
        assert not nijenhuis_torsion(extend_endo(G2, n)).is_zero()

    @given(constant_endos(R2))
    def test_torsion_free_extension(self, n):
        assert nijenhuis_torsion(extend_endo(G2, n)).is_zero()

    @pytest.mark.parametrize('convention', CONVENTIONS)
    def test_concomitant_of_extension(self, convention):
        x3 = R3.coordinate(2)
        L = Bivector(R3, {(0, 1): 1})
        n = EndoField.diagonal(R3, [x3, x3, 0])
        Pi = extend_bivector(G3, L, convention)
        N = extend_endo(G3, n, convention)
        for i in range(3):
            for j in range(i + 1, 3):
                a, b = OneForm.coordinate(R3, i), OneForm.coordinate(R3, j)
                lifted = magri_morosi(Pi, N, extend_oneform(G3, a, convention), extend_oneform(G3, b, convention))
                assert lifted == extend_oneform(G3, magri_morosi(L, n, a, b), convention)

    @pytest.mark.parametrize('convention', CONVENTIONS)
    def test_concomitant_of_extension_on_corpus(self, convention):
        checked = 0
        for instance in correspondence_corpus():
            L, n = instance.data.lam, instance.data.n
            if not endo_compose_bivector(n, L).ok:
                continue
            Pi, N = extend_bivector(G3, L, convention), extend_endo(G3, n, convention)
            forms = [OneForm.coordinate(G3.total, p) for p in range(G3.total.dim)]
            for p, q in itertools.combinations(range(G3.total.dim), 2):
                i, j = p % 3, q % 3
                a, b = OneForm.coordinate(R3, i), OneForm.coordinate(R3, j)
                lifted = magri_morosi(Pi, N, forms[p], forms[q])
                if forms[p] == extend_oneform(G3, a, convention) and forms[q] == extend_oneform(G3, b, convention):
                    assert lifted == extend_oneform(G3, magri_morosi(L, n, a, b), convention), instance.label
                else:
                    assert lifted.is_zero(), instance.label
            checked += 1
        assert checked > 0


class TestRestriction:
    @pytest.mark.parametrize('convention', CONVENTIONS)
    @given(X=vector_fields(R2), L=bivectors(R2), n=endos(R2, max_terms=2))
    def test_round_trip(self, convention, X, L, n):
        assert restrict(G2, extend_vector(G2, X, convention), convention) == X
        assert restrict(G2, extend_bivector(G2, L, convention), convention) == L
        assert restrict(G2, extend_endo(G2, n, convention), convention) == n

    def test_round_trip_so3(self):
        L = so3_bivector(R3)
        assert restrict(G3, extend_bivector(G3, L)) == L

    def test_oneform_round_trip(self):
        x1, x2 = R2.coordinates()
        a = OneForm(R2, (x2, x1 * x2))
        assert restrict(G2, extend_oneform(G2, a, 'left'), 'left') == a

    @pytest.mark.parametrize('convention', CONVENTIONS)
    @given(L=bivectors(R2), n=endos(R2, max_terms=2))
    def test_extension_of_restriction_fixes_invariant_tensors(self, convention, L, n):
        Pi, N = extend_bivector(G2, L, convention), extend_endo(G2, n, convention)
        assert is_invariant(G2, Pi, convention).ok
        assert is_invariant(G2, N, convention).ok
        assert extend_bivector(G2, restrict(G2, Pi, convention), convention) == Pi
        assert extend_endo(G2, restrict(G2, N, convention), convention) == N

    def test_mixed_bivector_is_neither_invariant_nor_restrictable(self):
        Pi = extend_bivector(G2, Bivector(R2, {(0, 1): 1})) + Bivector(G2.total, {(0, 2): 1})
        assert not is_invariant(G2, Pi).ok
        with pytest.raises(NotSVerticalError) as excinfo:
            restrict(G2, Pi)
        assert excinfo.value.component == 'x1 y1'

    def test_not_s_vertical_bivector(self):
        Pi = Bivector(G1.total, {(0, 1): 1})
        with pytest.raises(NotSVerticalError) as excinfo:
            restrict(G1, Pi)
        assert excinfo.value.component == 'x1 y1'

    def test_not_s_vertical_vector(self):
        with pytest.raises(NotSVerticalError) as excinfo:
            restrict(G1, VectorField(G1.total, (0, 1)))
        assert excinfo.value.component == '∂y1'

    def test_component_vanishing_at_units_is_allowed(self):
        x1, y1 = G1.total.coordinates()
        Pi = Bivector(G1.total, {(0, 1): x1 - y1})
        assert restrict(G1, Pi).is_zero()


class TestInvariance:
    @pytest.mark.parametrize('convention', CONVENTIONS)
    def test_extension_is_invariant(self, convention):
        Pi = extend_bivector(G3, so3_bivector(R3), convention)
        assert is_invariant(G3, Pi, convention).ok
        assert is_invariant(G3, extend_endo(G3, torsion_endo(R3), convention), convention).ok

    def test_y_dependence(self):
        y1 = G2.total.coordinate(2)
        result = is_invariant(G2, Bivector(G2.total, {(0, 1): y1}))
        assert not result.ok
        assert result.label == 'Π^(x1 x2) depends on y1'
        assert result.witness == y1

    def test_right_extension_is_not_left_invariant(self):
        Pi = extend_bivector(G2, Bivector(R2, {(0, 1): 1}))
        assert not is_invariant(G2, Pi, 'left').ok

    def test_classical_lift_is_not_invariant(self):
        result = is_invariant(G3, classical_lift(G3, so3_bivector(R3)))
        assert not result.ok
        assert result.label.startswith('Π^(y')

    def test_cross_block_endo(self):
        N = EndoField.identity(G1.total) + EndoField.from_entries(G1.total, {(0, 1): 1})
        result = is_invariant(G1, N)
        assert not result.ok
        assert result.label == 'N^x1_y1'
        assert result.witness == Poly.constant(G1.total, 1)

    def test_rejects_other_tensors(self):
        with pytest.raises(TypeError):
            is_invariant(G1, VectorField.zero(G1.total))
