# Components module
#
# Suites and the numeric oracle are imported from their modules directly:
# they depend on data.corpus, which itself builds on the groupoid types below.

from components.pair_groupoid import (
    AlgebroidData,
    FormalSymbols,
    PairGroupoid,
    check_groupoid_axioms,
    check_morphism
)
from components.invariance import (
    classical_lift,
    extend_bivector,
    extend_endo,
    extend_oneform,
    extend_vector,
    is_invariant,
    pushforward,
    restrict
)
from components.multiplicativity import (
    check_bivector_multiplicative,
    check_endo_multiplicative
)
from components.report import CheckEntry, CheckReport

__all__ = [
    'AlgebroidData',
    'FormalSymbols',
    'PairGroupoid',
    'check_groupoid_axioms',
    'check_morphism',
    'classical_lift',
    'extend_bivector',
    'extend_endo',
    'extend_oneform',
    'extend_vector',
    'is_invariant',
    'pushforward',
    'restrict',
    'check_bivector_multiplicative',
    'check_endo_multiplicative',
    'CheckEntry',
    'CheckReport'
]
