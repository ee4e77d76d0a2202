"""
Floating-point oracle for the exact tensor calculus.

Every operation family is recomputed in 64-bit floats with each symbolic
partial derivative replaced by a central finite difference, then compared
against exact evaluation at random rational points. The float code paths
below mirror the definitions directly and share nothing with ``tensorcalc``
beyond the input polynomials.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from data.corpus import (
    make_rng,
    random_bivector,
    random_compatible_endo,
    random_endo,
    random_oneform,
    random_point,
    random_poly,
    random_vector_field,
)
from utils.constants import DEFAULT_SEED, DEFAULT_TRIALS, FD_STEP, ORACLE_CHART, ORACLE_FAMILIES
from utils.symexpr import ChartSpace, Poly
from utils import tensorcalc as tc

logger = logging.getLogger(__name__)

FloatFn = Callable[[np.ndarray], float]


# --- float building blocks -------------------------------------------------

def float_poly(p: Poly) -> FloatFn:
    exps, coeffs = p.float_terms()
    if not len(coeffs):
        return lambda pt: 0.0
    return lambda pt: float(coeffs @ np.prod(pt ** exps, axis=1))


def fd(f: FloatFn, i: int, h: float = FD_STEP) -> FloatFn:
    """Central difference in direction i."""
    def derivative(pt: np.ndarray) -> float:
        step = np.zeros_like(pt)
        step[i] = h
        return (f(pt + step) - f(pt - step)) / (2 * h)
    return derivative


def _const(c: float) -> FloatFn:
    return lambda pt: c


def _total(fns: Sequence[FloatFn]) -> FloatFn:
    fns = list(fns)
    return lambda pt: sum(f(pt) for f in fns)


def _times(*fns: FloatFn) -> FloatFn:
    def product(pt):
        value = 1.0
        for f in fns:
            value *= f(pt)
        return value
    return product


def _minus(f: FloatFn, g: FloatFn) -> FloatFn:
    return lambda pt: f(pt) - g(pt)


def _vminus(a: List[FloatFn], b: List[FloatFn]) -> List[FloatFn]:
    return [_minus(f, g) for f, g in zip(a, b)]


def _vplus(a: List[FloatFn], b: List[FloatFn]) -> List[FloatFn]:
    return [_total([f, g]) for f, g in zip(a, b)]


def _floats(polys: Sequence[Poly]) -> List[FloatFn]:
    return [float_poly(p) for p in polys]


def _bivector_matrix(P: tc.Bivector) -> List[List[FloatFn]]:
    n = P.space.dim
    return [[float_poly(P.entry(i, j)) for j in range(n)] for i in range(n)]


def _endo_matrix(N: tc.EndoField) -> List[List[FloatFn]]:
    return [_floats(row) for row in N.matrix]


# --- float operations ------------------------------------------------------

def f_lie_bracket(X, Y):
    n = len(X)
    return [_total([_times(X[j], fd(Y[i], j)) for j in range(n)]
                   + [_times(_const(-1.0), Y[j], fd(X[i], j)) for j in range(n)]) for i in range(n)]


def f_apply(N, X):
    return [_total([_times(N[i][j], X[j]) for j in range(len(X))]) for i in range(len(X))]


def f_dual(N, a):
    return [_total([_times(N[i][j], a[i]) for i in range(len(a))]) for j in range(len(a))]


def f_sharp(P, a):
    return [_total([_times(P[j][i], a[j]) for j in range(len(a))]) for i in range(len(a))]


def f_pair(P, a, b):
    n = len(a)
    return _total([_times(P[i][j], a[i], b[j]) for i in range(n) for j in range(n)])


def f_d(f, n):
    return [fd(f, i) for i in range(n)]


def f_lie_derivative(X, b):
    n = len(X)
    return [_total([_times(X[j], fd(b[i], j)) for j in range(n)]
                   + [_times(b[j], fd(X[j], i)) for j in range(n)]) for i in range(n)]


def f_form_bracket(P, a, b):
    n = len(a)
    return _vminus(
        _vminus(f_lie_derivative(f_sharp(P, a), b), f_lie_derivative(f_sharp(P, b), a)),
        f_d(f_pair(P, a, b), n),
    )


def f_poisson(P, f, g, n):
    return f_pair(P, f_d(f, n), f_d(g, n))


def f_jacobiator(P, f, g, h, n):
    return _total([
        f_poisson(P, f, f_poisson(P, g, h, n), n),
        f_poisson(P, g, f_poisson(P, h, f, n), n),
        f_poisson(P, h, f_poisson(P, f, g, n), n),
    ])


def f_schouten(P, n):
    out = []
    for i, j, k in itertools.combinations(range(n), 3):
        terms = [_times(_const(2.0), P[a][l], fd(P[b][c], l))
                 for a, b, c in ((i, j, k), (j, k, i), (k, i, j)) for l in range(n)]
        out.append(_total(terms))
    return out


def f_deformed(N, X, Y):
    return _vminus(
        _vplus(f_lie_bracket(f_apply(N, X), Y), f_lie_bracket(X, f_apply(N, Y))),
        f_apply(N, f_lie_bracket(X, Y)),
    )


def f_torsion(N, X, Y):
    NX, NY = f_apply(N, X), f_apply(N, Y)
    return _vminus(f_lie_bracket(NX, NY), f_apply(N, _vminus(
        _vplus(f_lie_bracket(NX, Y), f_lie_bracket(X, NY)), f_apply(N, f_lie_bracket(X, Y))
    )))


def f_compose(N, P):
    """NP^{ij} = Σ_k N^j_k P^{ik}, the bivector with sharp N∘P♯."""
    n = len(N)
    return [[_total([_times(N[j][k], P[i][k]) for k in range(n)]) for j in range(n)] for i in range(n)]


def f_magri_morosi(P, N, a, b):
    NP = f_compose(N, P)
    return _vminus(
        f_form_bracket(NP, a, b),
        _vminus(
            _vplus(f_form_bracket(P, f_dual(N, a), b), f_form_bracket(P, a, f_dual(N, b))),
            f_dual(N, f_form_bracket(P, a, b)),
        ),
    )


# --- instances -------------------------------------------------------------

@dataclass(frozen=True)
class OracleInstance:
    """Exact result components and their float recomputation."""

    family: str
    space: ChartSpace
    exact: Tuple[Poly, ...]
    approx: Tuple[FloatFn, ...]


def _coordinate_fields(n: int) -> List[List[FloatFn]]:
    return [[_const(1.0 if k == i else 0.0) for k in range(n)] for i in range(n)]


def build_instance(family: str, rng: np.random.Generator, space: ChartSpace) -> OracleInstance:
    """Draw one random instance of an operation family."""
    n = space.dim
    small = dict(max_degree=1, max_terms=3, bound=1)
    medium = dict(max_degree=2, max_terms=3, bound=2)

    if family == 'partial':
        p = random_poly(rng, space, max_degree=3, max_terms=5)
        exact = [p.partial(i) for i in range(n)]
        approx = f_d(float_poly(p), n)
    elif family == 'lie_bracket':
        X, Y = random_vector_field(rng, space, **medium), random_vector_field(rng, space, **medium)
        exact = tc.lie_bracket(X, Y).components
        approx = f_lie_bracket(_floats(X.components), _floats(Y.components))
    elif family == 'schouten_square':
        P = random_bivector(rng, space, **medium)
        square = tc.schouten_square(P)
        exact = [square.entry(*key) for key in itertools.combinations(range(n), 3)]
        approx = f_schouten(_bivector_matrix(P), n)
    elif family == 'jacobiator':
        P = random_bivector(rng, space, **small)
        f, g, h = (random_poly(rng, space, **medium) for _ in range(3))
        exact = [tc.jacobiator(P, f, g, h)]
        approx = [f_jacobiator(_bivector_matrix(P), float_poly(f), float_poly(g), float_poly(h), n)]
    elif family == 'sharp':
        P, a = random_bivector(rng, space, **medium), random_oneform(rng, space, **medium)
        exact = tc.sharp(P, a).components
        approx = f_sharp(_bivector_matrix(P), _floats(a.components))
    elif family == 'endo_dual':
        N, a = random_endo(rng, space, **medium), random_oneform(rng, space, **medium)
        exact = tc.endo_dual(N, a).components
        approx = f_dual(_endo_matrix(N), _floats(a.components))
    elif family == 'nijenhuis_torsion':
        N = random_endo(rng, space, **medium)
        torsion = tc.nijenhuis_torsion(N)
        fields = _coordinate_fields(n)
        exact, approx = [], []
        for i, j in itertools.combinations(range(n), 2):
            exact.extend(torsion.component(i, j).components)
            approx.extend(f_torsion(_endo_matrix(N), fields[i], fields[j]))
    elif family == 'deformed_bracket':
        N = random_endo(rng, space, **small)
        X, Y = random_vector_field(rng, space, **medium), random_vector_field(rng, space, **medium)
        exact = tc.deformed_bracket(N, X, Y).components
        approx = f_deformed(_endo_matrix(N), _floats(X.components), _floats(Y.components))
    elif family == 'd_function':
        f = random_poly(rng, space, max_degree=3, max_terms=5)
        exact = tc.d_function(f).components
        approx = f_d(float_poly(f), n)
    elif family == 'lie_derivative_oneform':
        X, b = random_vector_field(rng, space, **medium), random_oneform(rng, space, **medium)
        exact = tc.lie_derivative_oneform(X, b).components
        approx = f_lie_derivative(_floats(X.components), _floats(b.components))
    elif family == 'form_bracket':
        P = random_bivector(rng, space, **small)
        a, b = random_oneform(rng, space, **medium), random_oneform(rng, space, **medium)
        exact = tc.form_bracket(P, a, b).components
        approx = f_form_bracket(_bivector_matrix(P), _floats(a.components), _floats(b.components))
    elif family == 'endo_compose':
        P = random_bivector(rng, space, **medium)
        N = random_compatible_endo(rng, P, random_poly(rng, space, **small))
        NP = tc.endo_compose_bivector(N, P).bivector
        matrix = f_compose(_endo_matrix(N), _bivector_matrix(P))
        pairs = list(itertools.combinations(range(n), 2))
        exact = [NP.entry(i, j) for i, j in pairs]
        approx = [matrix[i][j] for i, j in pairs]
    elif family == 'magri_morosi':
        P = random_bivector(rng, space, **small)
        N = random_compatible_endo(rng, P, random_poly(rng, space, **small))
        a, b = random_oneform(rng, space, **small), random_oneform(rng, space, **small)
        exact = tc.magri_morosi(P, N, a, b).components
        approx = f_magri_morosi(_bivector_matrix(P), _endo_matrix(N), _floats(a.components),
                                _floats(b.components))
    else:
        raise ValueError(f"Invalid family '{family}'. Must be one of: {', '.join(ORACLE_FAMILIES)}")
    return OracleInstance(family, space, tuple(exact), tuple(approx))


# --- comparison ------------------------------------------------------------

@dataclass(frozen=True)
class OracleOutcome:
    family: str
    deviation: float
    worst_point: Tuple[Fraction, ...]


def numeric_oracle(instance: OracleInstance, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> OracleOutcome:
    """
    Maximum relative deviation |approx - exact| / max(1, |exact|) over
    ``trials`` random rational points in [-1, 1]^n.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    rng = make_rng(seed)
    n = instance.space.dim
    worst, worst_point = 0.0, None
    for _ in range(trials):
        point = random_point(rng, n)
        at = np.array([float(c) for c in point])
        for exact, approx in zip(instance.exact, instance.approx):
            value = float(exact.evaluate(point))
            deviation = abs(approx(at) - value) / max(1.0, abs(value))
            if worst_point is None or deviation > worst:
                worst, worst_point = deviation, point
    return OracleOutcome(instance.family, worst, worst_point)


def run_oracle(
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    families: Sequence[str] = ORACLE_FAMILIES,
    space: ChartSpace = None,
) -> Dict[str, OracleOutcome]:
    """One random instance per family, each checked at ``trials`` points."""
    space = space or ChartSpace(ORACLE_CHART)
    rng = make_rng(seed)
    outcomes = {}
    for family in families:
        instance = build_instance(family, rng, space)
        outcomes[family] = numeric_oracle(instance, trials, seed)
        logger.debug("oracle %s: max deviation %.3e", family, outcomes[family].deviation)
    return outcomes
