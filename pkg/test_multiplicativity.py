"""
Tests for bivector and (1,1)-tensor multiplicativity on the pair groupoid.
"""

import sys
from pathlib import Path

import pytest

# Add current directory to path
sys.path.insert(0, str(Path(__file__).parent))

from components.invariance import classical_lift, extend_bivector, extend_endo
from components.multiplicativity import check_bivector_multiplicative, check_endo_multiplicative
from components.pair_groupoid import FormalSymbols, PairGroupoid
from data.corpus import so3_bivector, torsion_endo
from strategies import R1, R2, R3
from utils.tensorcalc import Bivector, EndoField

G1 = PairGroupoid.over(R1)
G2 = PairGroupoid.over(R2)
G3 = PairGroupoid.over(R3)


class TestBivectorMultiplicative:
    def test_zero(self):
        outcome = check_bivector_multiplicative(G2, Bivector(G2.total))
        assert outcome.ok
        assert outcome.failure is None
        assert [r.condition for r in outcome.results] == [
            'factorization_source', 'factorization_target', 'composability',
            'multiplication', 'base_maps', 'unit',
        ]

    def test_classical_lift_of_so3(self):
        assert check_bivector_multiplicative(G3, classical_lift(G3, so3_bivector(R3))).ok

    def test_classical_lift_of_constant_bivector(self):
        assert check_bivector_multiplicative(G2, classical_lift(G2, Bivector(R2, {(0, 1): 1}))).ok

    def test_right_extension_fails_composability(self):
        outcome = check_bivector_multiplicative(G2, extend_bivector(G2, Bivector(R2, {(0, 1): 1})))
        eta = FormalSymbols.of_dimension(2).block('eta')
        failure = outcome.failure
        assert not outcome.ok
        assert failure.condition == 'composability'
        assert failure.label == 'composability[fiber1]'
        assert failure.witness == -eta[1]

    def test_cross_block_dependence_fails_factorization(self):
        outcome = check_bivector_multiplicative(G1, Bivector(G1.total, {(0, 1): 1}))
        failure = outcome.failure
        assert failure.condition == 'factorization_source'
        assert failure.label.startswith('factorization_source[w1] depends on xi1')

    def test_wrong_sign_lift_fails(self):
        L = Bivector(R2, {(0, 1): 1})
        same_sign = extend_bivector(G2, L) + extend_bivector(G2, L, 'left')
        assert not check_bivector_multiplicative(G2, same_sign).ok


class TestEndoMultiplicative:
    def test_identity(self):
        outcome = check_endo_multiplicative(G2, EndoField.identity(G2.total), EndoField.identity(R2))
        assert outcome.ok
        assert [r.condition for r in outcome.results] == ['source', 'target', 'unit', 'multiplication']

    @pytest.mark.parametrize('space', [R2, R3], ids=lambda s: f"R{s.dim}")
    def test_extension_of_torsion_example(self, space):
        G = PairGroupoid.over(space)
        n = torsion_endo(space)
        assert check_endo_multiplicative(G, extend_endo(G, n), n).ok

    def test_wrong_base_map(self):
        n = torsion_endo(R2)
        outcome = check_endo_multiplicative(G2, extend_endo(G2, n), EndoField.identity(R2))
        assert outcome.failure.condition == 'source'

    def test_cross_block_entry(self):
        N = EndoField.identity(G1.total) + EndoField.from_entries(G1.total, {(0, 1): 1})
        outcome = check_endo_multiplicative(G1, N, EndoField.identity(R1))
        w1 = FormalSymbols.of_dimension(1).block('w')[0]
        failure = outcome.failure
        assert failure.condition == 'target'
        assert failure.label == 'target[fiber1]'
        assert failure.witness == w1
