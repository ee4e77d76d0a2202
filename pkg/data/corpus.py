"""
Seeded generators for random and structured test instances.

Everything draws from a ``numpy.random.Generator`` so a corpus is fully
determined by its seed. Degrees and coefficients are kept small: the same
instances feed the floating-point oracle, whose finite differences need
bounded higher derivatives on [-1, 1]^n.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from components.pair_groupoid import AlgebroidData
from utils.constants import CORRESPONDENCE_CORPUS_SIZE, DEFAULT_SEED, ORACLE_MAX_DENOMINATOR
from utils.symexpr import ChartSpace, Poly
from utils.tensorcalc import Bivector, EndoField, OneForm, VectorField


def make_rng(seed: int = DEFAULT_SEED) -> np.random.Generator:
    return np.random.default_rng(seed)


# --- random instances ------------------------------------------------------

def random_coefficient(rng: np.random.Generator, bound: int = 2, denominators: Sequence[int] = (1, 2)) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.choice(denominators)))


def random_poly(
    rng: np.random.Generator,
    space: ChartSpace,
    max_degree: int = 2,
    max_terms: int = 4,
    bound: int = 2,
) -> Poly:
    """Sum of up to ``max_terms`` random monomials of degree <= ``max_degree``."""
    terms = {}
    for _ in range(int(rng.integers(0, max_terms + 1))):
        exps = [0] * space.dim
        for _ in range(int(rng.integers(0, max_degree + 1))):
            exps[int(rng.integers(space.dim))] += 1
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + random_coefficient(rng, bound)
    return Poly(space, terms)


def random_vector_field(rng: np.random.Generator, space: ChartSpace, **kwargs) -> VectorField:
    return VectorField(space, tuple(random_poly(rng, space, **kwargs) for _ in range(space.dim)))


def random_oneform(rng: np.random.Generator, space: ChartSpace, **kwargs) -> OneForm:
    return OneForm(space, tuple(random_poly(rng, space, **kwargs) for _ in range(space.dim)))


def random_bivector(rng: np.random.Generator, space: ChartSpace, **kwargs) -> Bivector:
    n = space.dim
    return Bivector(space, {
        (i, j): random_poly(rng, space, **kwargs) for i in range(n) for j in range(i + 1, n)
    })


def random_endo(rng: np.random.Generator, space: ChartSpace, **kwargs) -> EndoField:
    n = space.dim
    return EndoField(space, tuple(
        tuple(random_poly(rng, space, **kwargs) for _ in range(n)) for _ in range(n)
    ))


def random_compatible_endo(rng: np.random.Generator, P: Bivector, f: Poly) -> EndoField:
    """
    f·id + P·W for a random constant skew matrix W.

    (P·W)∘P♯ has matrix -P·W·P, which is antisymmetric, so N∘P♯ always
    defines a bivector while N itself is in general not symmetric.
    """
    space, n = P.space, P.space.dim
    W = [[Fraction(0)] * n for _ in range(n)]
    for l in range(n):
        for k in range(l + 1, n):
            W[l][k] = Fraction(int(rng.integers(-1, 2)))
            W[k][l] = -W[l][k]
    entries = {}
    for i in range(n):
        for k in range(n):
            value = sum((P.entry(i, l) * W[l][k] for l in range(n)), Poly(space))
            entries[(i, k)] = value + f if i == k else value
    return EndoField.from_entries(space, entries)


def random_point(
    rng: np.random.Generator,
    dim: int,
    max_denominator: int = ORACLE_MAX_DENOMINATOR,
) -> Tuple[Fraction, ...]:
    """Random rational point in [-1, 1]^dim with denominators <= ``max_denominator``."""
    denominators = rng.integers(1, max_denominator + 1, size=dim)
    numerators = rng.integers(-denominators, denominators + 1)
    return tuple(Fraction(int(p), int(q)) for p, q in zip(numerators, denominators))


# --- structured instances on R^3 -------------------------------------------

def so3_bivector(space: ChartSpace) -> Bivector:
    """Lie-Poisson structure of so(3): P^{12} = x3, P^{23} = x1, P^{13} = -x2."""
    x1, x2, x3 = space.coordinates()
    return Bivector(space, {(0, 1): x3, (1, 2): x1, (0, 2): -x2})


def bivector_from_field(space: ChartSpace, V: Sequence[Poly]) -> Bivector:
    """Bivector on R^3 with (P^{23}, P^{31}, P^{12}) = V; Poisson iff V·curl V = 0."""
    return Bivector(space, {(1, 2): V[0], (2, 0): V[1], (0, 1): V[2]})


def gradient_bivector(space: ChartSpace, phi: Poly) -> Bivector:
    """Poisson by construction: V = grad(phi) has zero curl."""
    return bivector_from_field(space, [phi.partial(i) for i in range(3)])


def perturbed_bivector(space: ChartSpace, phi: Poly) -> Bivector:
    """
    grad(phi) plus x2·∂2∧∂3.

    The perturbed field V' = grad(phi) + (x2, 0, 0) has V'·curl V' = -∂3 phi,
    so the result is Poisson iff phi does not depend on x3.
    """
    x2 = space.coordinate(1)
    return gradient_bivector(space, phi) + Bivector(space, {(1, 2): x2})


def torsion_endo(space: ChartSpace) -> EndoField:
    """N∂1 = x2·∂1, N∂k = ∂k otherwise; τ(∂1, ∂2) = (x2 - 1)∂1."""
    values = [Poly.constant(space, 1) for _ in range(space.dim)]
    values[0] = space.coordinate(1)
    return EndoField.diagonal(space, values)


def random_potential(rng: np.random.Generator, space: ChartSpace, degree: int) -> Poly:
    """Random polynomial of degree <= ``degree`` with a nonzero x3 coefficient."""
    phi = random_poly(rng, space, max_degree=degree, max_terms=4, bound=1)
    slope = Fraction(int(rng.choice([-2, -1, 1, 2])))
    return phi - Poly(space, {(0, 0, 1): phi.partial(2).constant_term()}) + Poly(space, {(0, 0, 1): slope})


def random_structured_endo(rng: np.random.Generator, space: ChartSpace) -> EndoField:
    """Scalar constant, diagonal constant or the torsion example."""
    kind = int(rng.integers(3))
    if kind == 0:
        return EndoField.scalar(space, Fraction(int(rng.integers(1, 4))))
    if kind == 1:
        return EndoField.diagonal(space, [Fraction(int(v)) for v in rng.integers(1, 4, size=space.dim)])
    return torsion_endo(space)


@dataclass(frozen=True)
class CorpusInstance:
    label: str
    data: AlgebroidData
    poisson: bool


def correspondence_corpus(seed: int = DEFAULT_SEED, size: int = CORRESPONDENCE_CORPUS_SIZE) -> List[CorpusInstance]:
    """
    Mixed pass/fail corpus of (Λ, n) on R^3.

    Even slots hold Poisson Λ (alternating constant and so(3)-type linear,
    both gradients), odd slots the perturbed non-Poisson variant. The (1,1)
    tensors cycle through scalar and diagonal constants and the torsion
    example, so every combination of the four compatibility items occurs.
    """
    rng = make_rng(seed)
    space = ChartSpace.euclidean(3)
    corpus = []
    for k in range(size):
        degree = 1 if (k // 2) % 2 == 0 else 2
        phi = random_potential(rng, space, degree)
        if k % 2 == 0:
            lam, poisson, kind = gradient_bivector(space, phi), True, 'poisson'
        else:
            lam, poisson, kind = perturbed_bivector(space, phi), False, 'perturbed'
        n = random_structured_endo(rng, space)
        corpus.append(CorpusInstance(f"{kind}-{k:02d}", AlgebroidData(space, lam, n), poisson))
    return corpus


def poisson_bivectors(seed: int = DEFAULT_SEED, count: int = 10) -> List[Bivector]:
    """Random Poisson bivectors on R^3 of the form constant + linear."""
    rng = make_rng(seed)
    space = ChartSpace.euclidean(3)
    return [gradient_bivector(space, random_potential(rng, space, 2)) for _ in range(count)]
