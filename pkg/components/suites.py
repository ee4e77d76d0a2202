"""
Verification suites: algebroid level, groupoid level, their correspondence,
the groupoid axioms and the numeric oracle.

Every suite returns a ``CheckReport``. Mathematical failures are verdicts;
a ``VerificationError`` raised while computing a step becomes an ``error``
verdict carrying the message.
"""

import itertools
import logging
from typing import Optional

from components.invariance import (
    classical_lift,
    extend_bivector,
    extend_endo,
    extend_vector,
    is_invariant,
    restrict,
)
from components.multiplicativity import (
    MultiplicativityResult,
    check_bivector_multiplicative,
    check_endo_multiplicative,
)
from components.oracle import run_oracle
from components.pair_groupoid import (
    BASE_MAPS,
    COTANGENT_MAPS,
    TANGENT_MAPS,
    AlgebroidData,
    FormalSymbols,
    PairGroupoid,
    check_groupoid_axioms,
)
from components.report import CheckReport
from utils.constants import (
    DEFAULT_BIVECTOR_LIFT,
    DEFAULT_CONVENTION,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    ORACLE_TOLERANCE,
    PN_ITEMS,
)
from utils.errors import VerificationError
from utils.symexpr import ChartSpace
from utils.tensorcalc import Bivector, EndoField, OneForm, VectorField, lie_bracket, pn_manifold_check, sharp

logger = logging.getLogger(__name__)

MULTIPLICATIVITY_NOTE = (
    "bivector multiplicativity is reported on its own: a right-invariant Λ with "
    "nondegenerate sharp does not preserve composability on the pair groupoid, "
    "while Λ(x) ⊕ (-Λ(y)) does"
)
INVARIANCE_NOTE = "invariance is not required of a multiplicative structure"


def _add_pn_items(report: CheckReport, prefix: str, P: Bivector, N: EndoField) -> None:
    for verdict in pn_manifold_check(P, N):
        report.add(f"{prefix}.{verdict.item}", verdict.verdict, verdict.witness,
                   verdict.witness_label, verdict.note)


def _add_multiplicativity(report: CheckReport, check_id: str, outcome: MultiplicativityResult,
                          note: Optional[str] = None) -> None:
    failure = outcome.failure
    if failure is None:
        report.add(check_id, 'pass', note=note)
    else:
        report.add(check_id, 'fail', failure.witness, failure.label, failure.note or note)


def run_algebroid_suite(data: AlgebroidData) -> CheckReport:
    """The four compatibility items for (Λ, n) on the base chart."""
    report = CheckReport(f"algebroid suite on {data.base}")
    _add_pn_items(report, 'algebroid', data.lam, data.n)
    logger.info("algebroid suite: %s", report.summary)
    return report


def run_groupoid_suite(
    G: PairGroupoid,
    P: Bivector,
    N: EndoField,
    n_M: EndoField,
    convention: str = DEFAULT_CONVENTION,
) -> CheckReport:
    """
    PN items, multiplicativity and invariance for tensors on M×M.

    Invariance entries are computed for the given convention and recorded as
    informational: they do not affect ``passed`` or the summary.
    """
    report = CheckReport(f"groupoid suite on {G.total}")
    _add_pn_items(report, 'groupoid', P, N)
    _add_multiplicativity(report, 'groupoid.bivector_multiplicative', check_bivector_multiplicative(G, P))
    _add_multiplicativity(report, 'groupoid.endo_multiplicative', check_endo_multiplicative(G, N, n_M))
    for check_id, tensor in (('groupoid.bivector_invariant', P), ('groupoid.endo_invariant', N)):
        result = is_invariant(G, tensor, convention)
        report.add(check_id, 'pass' if result.ok else 'fail', result.witness, result.label,
                   f"{convention}; {INVARIANCE_NOTE}", informational=True)
    if report.verdict_of('groupoid.bivector_multiplicative') == 'fail':
        report.notes.append(MULTIPLICATIVITY_NOTE)
    logger.info("groupoid suite: %s", report.summary)
    return report


def run_groupoid_from_base(
    data: AlgebroidData,
    convention: str = DEFAULT_CONVENTION,
    lift: str = DEFAULT_BIVECTOR_LIFT,
) -> CheckReport:
    """Groupoid suite on the extension of base data (or on the classical lift of Λ)."""
    G = PairGroupoid.over(data.base)
    P = classical_lift(G, data.lam) if lift == 'classical' else extend_bivector(G, data.lam, convention)
    report = run_groupoid_suite(G, P, extend_endo(G, data.n, convention), data.n, convention)
    report.title += f" ({lift} lift, {convention} convention)"
    return report


def _bracket_morphism(G: PairGroupoid, data: AlgebroidData, convention: str):
    """First pair of sections whose bracket is not preserved by extension, if any."""
    space = data.base
    sections = [sharp(data.lam, OneForm.coordinate(space, i)) for i in range(space.dim)]
    sections += [data.n.apply(VectorField.coordinate(space, j)) for j in range(space.dim)]
    for a, b in itertools.combinations(range(len(sections)), 2):
        X, Y = sections[a], sections[b]
        residual = extend_vector(G, lie_bracket(X, Y), convention) - lie_bracket(
            extend_vector(G, X, convention), extend_vector(G, Y, convention))
        for k, value in enumerate(residual.components):
            if value:
                return f"[X{a + 1}, X{b + 1}] at ∂{G.label(k)}", value
    return None


def run_correspondence(data: AlgebroidData, convention: str = DEFAULT_CONVENTION) -> CheckReport:
    """
    Algebroid verdicts against the verdicts of the invariant extension.

    Runs the algebroid suite, extends (Λ, n), runs the PN items and the
    (1,1)-tensor multiplicativity check upstairs, restricts back and compares
    item by item. Bivector multiplicativity is not part of the matching.
    """
    G = PairGroupoid.over(data.base)
    report = CheckReport(f"correspondence on {data.base} ({convention} convention)")
    report.extend(run_algebroid_suite(data))

    P = extend_bivector(G, data.lam, convention)
    N = extend_endo(G, data.n, convention)
    _add_pn_items(report, 'groupoid', P, N)
    _add_multiplicativity(report, 'groupoid.endo_multiplicative', check_endo_multiplicative(G, N, data.n))

    try:
        back_lam = restrict(G, P, convention)
        back_n = restrict(G, N, convention)
        if back_lam != data.lam:
            report.add('correspondence.round_trip', 'fail', note=f"restricted bivector {back_lam!r}")
        elif back_n != data.n:
            report.add('correspondence.round_trip', 'fail', note=f"restricted (1,1)-tensor {back_n!r}")
        else:
            report.add('correspondence.round_trip', 'pass')
    except VerificationError as exc:
        report.add('correspondence.round_trip', 'error', note=str(exc))

    mismatch = _bracket_morphism(G, data, convention)
    if mismatch is None:
        report.add('correspondence.bracket_morphism', 'pass')
    else:
        report.add('correspondence.bracket_morphism', 'fail', mismatch[1], mismatch[0])

    for item in PN_ITEMS:
        below = report.verdict_of(f"algebroid.{item}")
        above = report.verdict_of(f"groupoid.{item}")
        if below == above:
            report.add(f"correspondence.match.{item}", 'pass', note=f"both {below}")
        else:
            report.add(f"correspondence.match.{item}", 'fail', note=f"algebroid {below}, groupoid {above}")

    report.notes.append(MULTIPLICATIVITY_NOTE)
    logger.info("correspondence (%s): %s", convention, report.summary)
    return report


def run_axiom_suite(base: ChartSpace) -> CheckReport:
    """Groupoid axioms of M×M, TG and T*G as identities over formal symbols."""
    symbols = FormalSymbols.of_dimension(base.dim)
    report = CheckReport(f"groupoid axioms over {base}")
    for maps in (BASE_MAPS, TANGENT_MAPS, COTANGENT_MAPS):
        for result in check_groupoid_axioms(maps, symbols.chain_for(maps)):
            verdict = 'pass' if result.ok else 'fail'
            report.add(f"axioms.{maps.name}.{result.condition}", verdict, result.witness, result.label,
                       result.note)
    logger.info("axiom suite: %s", report.summary)
    return report


def run_oracle_suite(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> CheckReport:
    """Numeric agreement of every operation family with the float recomputation."""
    report = CheckReport(f"numeric oracle ({trials} trials, seed {seed})")
    for family, outcome in run_oracle(trials, seed).items():
        verdict = 'pass' if outcome.deviation < ORACLE_TOLERANCE else 'fail'
        point = '(' + ', '.join(str(c) for c in outcome.worst_point) + ')'
        report.add(f"oracle.{family}", verdict, note=f"max deviation {outcome.deviation:.3e} at {point}")
    return report


def guarded(suite, *args, title: str = 'check', **kwargs) -> CheckReport:
    """Run a suite, turning a ``VerificationError`` into an error verdict."""
    try:
        return suite(*args, **kwargs)
    except VerificationError as exc:
        report = CheckReport(title)
        report.add(title, 'error', note=str(exc))
        return report
