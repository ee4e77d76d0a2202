"""
Tensor fields with polynomial components on a single chart.

This module provides the pointwise and differential operations used to state
Poisson-Nijenhuis compatibility: Lie bracket, Schouten square, sharp maps,
Nijenhuis torsion, the deformed bracket, the bracket of 1-forms induced by a
bivector and the Magri-Morosi concomitant.

Index conventions (0-based):
    VectorField.components[i]   = X^i
    OneForm.components[i]       = a_i
    Bivector.entry(i, j)        = P^{ij} = P(dx_i, dx_j)
    EndoField.entry(i, j)       = N^i_j = <dx_i, N ∂_j>
    sharp(P, a)^i               = Σ_j P^{ji} a_j, so <b, P♯a> = P(a, b)
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from utils.errors import DimensionError, IndexRangeError, NotABivectorError
from utils.symexpr import ChartSpace, CoordRef, Poly, require_same_chart

logger = logging.getLogger(__name__)

Coefficient = Union[Poly, int, Fraction]


def _as_poly(space: ChartSpace, value: Coefficient) -> Poly:
    if isinstance(value, Poly):
        require_same_chart(space, value.space)
        return value
    return Poly.constant(space, value)


def _sum(space: ChartSpace, polys) -> Poly:
    total = Poly(space)
    for p in polys:
        total = total + p
    return total


# --- vector fields and 1-forms ---------------------------------------------

@dataclass(frozen=True)
class VectorField:
    """X = Σ X^i ∂_i with polynomial components."""

    space: ChartSpace
    components: Tuple[Poly, ...]

    def __post_init__(self):
        comps = tuple(_as_poly(self.space, c) for c in self.components)
        if len(comps) != self.space.dim:
            raise DimensionError(
                f"Vector field needs {self.space.dim} components, got {len(comps)}"
            )
        object.__setattr__(self, 'components', comps)

    @classmethod
    def zero(cls, space: ChartSpace) -> 'VectorField':
        return cls(space, (Poly(space),) * space.dim)

    @classmethod
    def coordinate(cls, space: ChartSpace, coord: CoordRef) -> 'VectorField':
        """The coordinate field ∂_i."""
        i = space.index(coord)
        return cls(space, tuple(1 if k == i else 0 for k in range(space.dim)))

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def __add__(self, other: 'VectorField') -> 'VectorField':
        require_same_chart(self.space, other.space)
        return VectorField(self.space, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: 'VectorField') -> 'VectorField':
        require_same_chart(self.space, other.space)
        return VectorField(self.space, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> 'VectorField':
        return VectorField(self.space, tuple(-a for a in self.components))

    def scale(self, f: Coefficient) -> 'VectorField':
        f = _as_poly(self.space, f)
        return VectorField(self.space, tuple(f * a for a in self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def derive(self, f: Poly) -> Poly:
        """X(f) = Σ X^i ∂_i f."""
        require_same_chart(self.space, f.space)
        return _sum(self.space, (x * f.partial(i) for i, x in enumerate(self.components) if x))

    def compose(self, images: Sequence[Poly]) -> Tuple[Poly, ...]:
        return tuple(c.compose(images) for c in self.components)

    def __str__(self) -> str:
        return '(' + ', '.join(c.to_expr() for c in self.components) + ')'


@dataclass(frozen=True)
class OneForm:
    """a = Σ a_i dx_i with polynomial components."""

    space: ChartSpace
    components: Tuple[Poly, ...]

    def __post_init__(self):
        comps = tuple(_as_poly(self.space, c) for c in self.components)
        if len(comps) != self.space.dim:
            raise DimensionError(
                f"1-form needs {self.space.dim} components, got {len(comps)}"
            )
        object.__setattr__(self, 'components', comps)

    @classmethod
    def zero(cls, space: ChartSpace) -> 'OneForm':
        return cls(space, (Poly(space),) * space.dim)

    @classmethod
    def coordinate(cls, space: ChartSpace, coord: CoordRef) -> 'OneForm':
        """The coordinate differential dx_i."""
        i = space.index(coord)
        return cls(space, tuple(1 if k == i else 0 for k in range(space.dim)))

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def __add__(self, other: 'OneForm') -> 'OneForm':
        require_same_chart(self.space, other.space)
        return OneForm(self.space, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: 'OneForm') -> 'OneForm':
        require_same_chart(self.space, other.space)
        return OneForm(self.space, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> 'OneForm':
        return OneForm(self.space, tuple(-a for a in self.components))

    def scale(self, f: Coefficient) -> 'OneForm':
        f = _as_poly(self.space, f)
        return OneForm(self.space, tuple(f * a for a in self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def pair(self, X: VectorField) -> Poly:
        """<a, X> = Σ a_i X^i."""
        require_same_chart(self.space, X.space)
        return _sum(self.space, (a * x for a, x in zip(self.components, X.components)))

    def __str__(self) -> str:
        return '(' + ', '.join(c.to_expr() for c in self.components) + ')'


def pairing(a: OneForm, X: VectorField) -> Poly:
    return a.pair(X)


# --- multivectors ----------------------------------------------------------

def _permutation_sign(indices: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign and sorted form of an index tuple (sign 0 on repeats)."""
    if len(set(indices)) != len(indices):
        return 0, tuple(sorted(indices))
    sign = 1
    items = list(indices)
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if items[a] > items[b]:
                sign = -sign
    return sign, tuple(sorted(items))


class Multivector:
    """Antisymmetric contravariant tensor stored on strictly increasing slots."""

    rank = 0

    def __init__(self, space: ChartSpace, components: Mapping[Tuple[int, ...], Coefficient] = None):
        stored: Dict[Tuple[int, ...], Poly] = {}
        for key, value in (components or {}).items():
            key = tuple(space.index(k) for k in key)
            if len(key) != self.rank:
                raise DimensionError(f"Expected {self.rank} indices, got {key}")
            value = _as_poly(space, value)
            sign, ordered = _permutation_sign(key)
            if sign == 0:
                if value:
                    raise IndexRangeError(
                        f"Repeated index {tuple(k + 1 for k in key)} in an antisymmetric tensor"
                    )
                continue
            total = stored.get(ordered, Poly(space)) + (value if sign > 0 else -value)
            stored[ordered] = total
        self.space = space
        self._components = tuple(sorted((k, v) for k, v in stored.items() if v))

    @property
    def components(self) -> Dict[Tuple[int, ...], Poly]:
        return dict(self._components)

    def items(self):
        return iter(self._components)

    def entry(self, *indices: int) -> Poly:
        sign, ordered = _permutation_sign(indices)
        if sign == 0:
            return Poly(self.space)
        value = dict(self._components).get(ordered)
        if value is None:
            return Poly(self.space)
        return value if sign > 0 else -value

    def is_zero(self) -> bool:
        return not self._components

    def _combine(self, other, op):
        require_same_chart(self.space, other.space)
        merged = dict(self._components)
        for key, value in other._components:
            merged[key] = op(merged.get(key, Poly(self.space)), value)
        return type(self)(self.space, merged)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return type(self)(self.space, {k: -v for k, v in self._components})

    def scale(self, f: Coefficient):
        f = _as_poly(self.space, f)
        return type(self)(self.space, {k: f * v for k, v in self._components})

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.space == other.space and self._components == other._components

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.space, self._components))

    def __repr__(self) -> str:
        names = self.space.coord_names
        body = ', '.join(
            f"{' '.join(names[k] for k in key)}: {value.to_expr()}" for key, value in self._components
        )
        return f"{type(self).__name__}({{{body}}})"


class Bivector(Multivector):
    """P = Σ_{i<j} P^{ij} ∂_i ∧ ∂_j."""

    rank = 2

    @classmethod
    def from_matrix(cls, space: ChartSpace, matrix: Sequence[Sequence[Coefficient]]) -> 'Bivector':
        """Build from a full matrix, which must be antisymmetric."""
        n = space.dim
        rows = [[_as_poly(space, v) for v in row] for row in matrix]
        for i in range(n):
            for j in range(i, n):
                if not (rows[i][j] + rows[j][i]).is_zero():
                    raise NotABivectorError(rows[i][j] + rows[j][i], (i, j))
        return cls(space, {(i, j): rows[i][j] for i in range(n) for j in range(i + 1, n)})

    def matrix(self) -> List[List[Poly]]:
        n = self.space.dim
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def pair(self, a: OneForm, b: OneForm) -> Poly:
        """P(a, b) = Σ P^{ij} a_i b_j."""
        require_same_chart(self.space, a.space, b.space)
        total = Poly(self.space)
        for (i, j), value in self._components:
            total = total + value * (a[i] * b[j] - a[j] * b[i])
        return total


class Trivector(Multivector):
    """T = Σ_{i<j<k} T^{ijk} ∂_i ∧ ∂_j ∧ ∂_k."""

    rank = 3

    def apply(self, a: OneForm, b: OneForm, c: OneForm) -> Poly:
        """T(a, b, c) = Σ over all index triples of T^{ijk} a_i b_j c_k."""
        require_same_chart(self.space, a.space, b.space, c.space)
        total = Poly(self.space)
        for key, value in self._components:
            for perm in itertools.permutations(key):
                sign, _ = _permutation_sign(perm)
                i, j, k = perm
                term = value * a[i] * b[j] * c[k]
                total = total + (term if sign > 0 else -term)
        return total


# --- (1,1)-tensors ---------------------------------------------------------

@dataclass(frozen=True)
class EndoField:
    """(1,1)-tensor N with matrix entries N^i_j = <dx_i, N ∂_j>."""

    space: ChartSpace
    matrix: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self):
        n = self.space.dim
        rows = tuple(tuple(_as_poly(self.space, v) for v in row) for row in self.matrix)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise DimensionError(f"(1,1)-tensor needs a {n}x{n} matrix")
        object.__setattr__(self, 'matrix', rows)

    @classmethod
    def from_entries(cls, space: ChartSpace, entries: Mapping[Tuple[int, int], Coefficient]) -> 'EndoField':
        n = space.dim
        rows = [[Poly(space) for _ in range(n)] for _ in range(n)]
        for (i, j), value in entries.items():
            rows[space.index(i)][space.index(j)] = _as_poly(space, value)
        return cls(space, tuple(tuple(row) for row in rows))

    @classmethod
    def scalar(cls, space: ChartSpace, value: Coefficient) -> 'EndoField':
        return cls.from_entries(space, {(i, i): value for i in range(space.dim)})

    @classmethod
    def identity(cls, space: ChartSpace) -> 'EndoField':
        return cls.scalar(space, 1)

    @classmethod
    def zero(cls, space: ChartSpace) -> 'EndoField':
        return cls.scalar(space, 0)

    @classmethod
    def diagonal(cls, space: ChartSpace, values: Sequence[Coefficient]) -> 'EndoField':
        if len(values) != space.dim:
            raise DimensionError(f"Diagonal needs {space.dim} entries, got {len(values)}")
        return cls.from_entries(space, {(i, i): v for i, v in enumerate(values)})

    def entry(self, i: int, j: int) -> Poly:
        return self.matrix[i][j]

    def apply(self, X: VectorField) -> VectorField:
        """(NX)^i = Σ_j N^i_j X^j."""
        require_same_chart(self.space, X.space)
        return VectorField(self.space, tuple(
            _sum(self.space, (n * x for n, x in zip(row, X.components) if n and x))
            for row in self.matrix
        ))

    def dual(self, a: OneForm) -> OneForm:
        """(N*a)_j = Σ_i N^i_j a_i."""
        require_same_chart(self.space, a.space)
        n = self.space.dim
        return OneForm(self.space, tuple(
            _sum(self.space, (self.matrix[i][j] * a[i] for i in range(n) if self.matrix[i][j] and a[i]))
            for j in range(n)
        ))

    def __add__(self, other: 'EndoField') -> 'EndoField':
        require_same_chart(self.space, other.space)
        return EndoField(self.space, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.matrix, other.matrix)
        ))

    def scale(self, f: Coefficient) -> 'EndoField':
        f = _as_poly(self.space, f)
        return EndoField(self.space, tuple(tuple(f * v for v in row) for row in self.matrix))

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.matrix for v in row)

    def __repr__(self) -> str:
        rows = '; '.join(', '.join(v.to_expr() for v in row) for row in self.matrix)
        return f"EndoField([{rows}])"


@dataclass(frozen=True)
class VectorTwoForm:
    """Vector-valued 2-form stored on coordinate pairs i<j; used for torsion."""

    space: ChartSpace
    values: Tuple[Tuple[Tuple[int, int], VectorField], ...]

    def component(self, i: int, j: int) -> VectorField:
        if i == j:
            return VectorField.zero(self.space)
        lookup = dict(self.values)
        if i < j:
            return lookup[(i, j)]
        return -lookup[(j, i)]

    def is_zero(self) -> bool:
        return all(v.is_zero() for _, v in self.values)

    def first_nonzero(self) -> Optional[Tuple[int, int, int, Poly]]:
        """(i, j, k, τ(∂_i, ∂_j)^k) for the first nonzero slot, or None."""
        for (i, j), field in self.values:
            for k, value in enumerate(field.components):
                if value:
                    return i, j, k, value
        return None

    def array(self) -> List[List[List[Poly]]]:
        """Full dim×dim×dim array T[k][i][j] = τ(∂_i, ∂_j)^k."""
        n = self.space.dim
        return [[[self.component(i, j)[k] for j in range(n)] for i in range(n)] for k in range(n)]


# --- differential operations -----------------------------------------------

def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^i = Σ_j X^j ∂_j Y^i - Y^j ∂_j X^i."""
    space = require_same_chart(X.space, Y.space)
    return VectorField(space, tuple(X.derive(Y[i]) - Y.derive(X[i]) for i in range(space.dim)))


def poisson_bracket(P: Bivector, f: Poly, g: Poly) -> Poly:
    """{f, g} = P(df, dg)."""
    require_same_chart(P.space, f.space, g.space)
    return P.pair(d_function(f), d_function(g))


def jacobiator(P: Bivector, f: Poly, g: Poly, h: Poly) -> Poly:
    """{f,{g,h}} + {g,{h,f}} + {h,{f,g}}."""
    require_same_chart(P.space, f.space, g.space, h.space)
    return (
        poisson_bracket(P, f, poisson_bracket(P, g, h))
        + poisson_bracket(P, g, poisson_bracket(P, h, f))
        + poisson_bracket(P, h, poisson_bracket(P, f, g))
    )


def schouten_square(P: Bivector) -> Trivector:
    """
    Schouten-Nijenhuis square [P, P] of a bivector.

    Normalised so that [P,P](df, dg, dh) = 2·Jac_P(f, g, h):

        [P,P]^{ijk} = 2·Σ_cyc(i,j,k) Σ_l P^{il} ∂_l P^{jk}
    """
    space = P.space
    n = space.dim
    # ∂_l P^{jk} is reused across the cyclic sum.
    derivatives = {
        key: [value.partial(l) for l in range(n)] for key, value in P.items()
    }

    def d_entry(j: int, k: int, l: int) -> Poly:
        sign, ordered = _permutation_sign((j, k))
        if sign == 0 or ordered not in derivatives:
            return Poly(space)
        value = derivatives[ordered][l]
        return value if sign > 0 else -value

    components = {}
    for i, j, k in itertools.combinations(range(n), 3):
        total = Poly(space)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l in range(n):
                coeff = P.entry(a, l)
                if coeff:
                    total = total + coeff * d_entry(b, c, l)
        components[(i, j, k)] = 2 * total
    return Trivector(space, components)


def sharp(P: Bivector, a: OneForm) -> VectorField:
    """P♯a = P(a, -): component i is Σ_j P^{ji} a_j."""
    space = require_same_chart(P.space, a.space)
    n = space.dim
    return VectorField(space, tuple(
        _sum(space, (P.entry(j, i) * a[j] for j in range(n) if a[j])) for i in range(n)
    ))


def endo_apply(N: EndoField, X: VectorField) -> VectorField:
    return N.apply(X)


def endo_dual(N: EndoField, a: OneForm) -> OneForm:
    """N*a, characterised by <N*a, X> = <a, NX>."""
    return N.dual(a)


@dataclass(frozen=True)
class ComposeResult:
    """Outcome of composing N with a bivector P."""

    ok: bool
    bivector: Optional[Bivector] = None
    witness: Optional[Poly] = None
    indices: Optional[Tuple[int, int]] = None


def endo_compose_bivector(N: EndoField, P: Bivector) -> ComposeResult:
    """
    Compose N with P♯ and test whether the result is a bivector.

    A^{ij} = Σ_k N^i_k P^{jk} is the matrix of N∘P♯ (so (N∘P♯ a)^i = Σ_j A^{ij} a_j).
    NP exists iff A is antisymmetric, and then NP^{ij} = A^{ji} satisfies
    (NP)♯ = N∘P♯. Otherwise the first nonzero A^{ij} + A^{ji} (i <= j) is the
    witness.
    """
    space = require_same_chart(N.space, P.space)
    n = space.dim
    A = [[_sum(space, (N.entry(i, k) * P.entry(j, k) for k in range(n) if N.entry(i, k)))
          for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            symmetric = A[i][j] + A[j][i]
            if symmetric:
                return ComposeResult(ok=False, witness=symmetric, indices=(i, j))
    return ComposeResult(ok=True, bivector=Bivector(space, {
        (i, j): A[j][i] for i in range(n) for j in range(i + 1, n)
    }))


def require_bivector(N: EndoField, P: Bivector) -> Bivector:
    """NP as a bivector, or ``NotABivectorError`` with the antisymmetry witness."""
    result = endo_compose_bivector(N, P)
    if not result.ok:
        raise NotABivectorError(result.witness, result.indices)
    return result.bivector


def torsion_on(N: EndoField, X: VectorField, Y: VectorField) -> VectorField:
    """τN(X, Y) = [NX, NY] - N([NX, Y] + [X, NY] - N[X, Y])."""
    NX = N.apply(X)
    NY = N.apply(Y)
    return lie_bracket(NX, NY) - N.apply(
        lie_bracket(NX, Y) + lie_bracket(X, NY) - N.apply(lie_bracket(X, Y))
    )


def nijenhuis_torsion(N: EndoField) -> VectorTwoForm:
    """Nijenhuis torsion on all coordinate pairs (∂_i, ∂_j), i < j."""
    space = N.space
    fields = [VectorField.coordinate(space, i) for i in range(space.dim)]
    values = tuple(
        ((i, j), torsion_on(N, fields[i], fields[j]))
        for i, j in itertools.combinations(range(space.dim), 2)
    )
    return VectorTwoForm(space, values)


def deformed_bracket(N: EndoField, X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]_N = [NX, Y] + [X, NY] - N[X, Y]."""
    require_same_chart(N.space, X.space, Y.space)
    return lie_bracket(N.apply(X), Y) + lie_bracket(X, N.apply(Y)) - N.apply(lie_bracket(X, Y))


def deformed_anchor_defect(N: EndoField, X: VectorField, Y: VectorField) -> VectorField:
    """N[X, Y]_N - [NX, NY]; equals -τN(X, Y), so it vanishes iff N is Nijenhuis."""
    return N.apply(deformed_bracket(N, X, Y)) - lie_bracket(N.apply(X), N.apply(Y))


def d_function(f: Poly) -> OneForm:
    """df = Σ ∂_i f dx_i."""
    return OneForm(f.space, tuple(f.partial(i) for i in range(f.space.dim)))


def lie_derivative_oneform(X: VectorField, b: OneForm) -> OneForm:
    """(L_X b)_i = Σ_j X^j ∂_j b_i + b_j ∂_i X^j."""
    space = require_same_chart(X.space, b.space)
    n = space.dim
    return OneForm(space, tuple(
        X.derive(b[i]) + _sum(space, (b[j] * X[j].partial(i) for j in range(n) if b[j]))
        for i in range(n)
    ))


def form_bracket(P: Bivector, a: OneForm, b: OneForm) -> OneForm:
    """[a, b]_P = L_{P♯a} b - L_{P♯b} a - d(P(a, b))."""
    require_same_chart(P.space, a.space, b.space)
    return (
        lie_derivative_oneform(sharp(P, a), b)
        - lie_derivative_oneform(sharp(P, b), a)
        - d_function(P.pair(a, b))
    )


def cotangent_anchor_defect(P: Bivector, a: OneForm, b: OneForm) -> VectorField:
    """P♯[a, b]_P - [P♯a, P♯b]; vanishes for Poisson P."""
    return sharp(P, form_bracket(P, a, b)) - lie_bracket(sharp(P, a), sharp(P, b))


def magri_morosi(P: Bivector, N: EndoField, a: OneForm, b: OneForm) -> OneForm:
    """
    Magri-Morosi concomitant C(P, N)(a, b).

        C(a, b) = [a, b]_{NP} - ([N*a, b]_P + [a, N*b]_P - N*[a, b]_P)

    Raises:
        NotABivectorError: If N∘P♯ is not antisymmetric (NP does not exist)
    """
    require_same_chart(P.space, N.space, a.space, b.space)
    NP = require_bivector(N, P)
    return form_bracket(NP, a, b) - (
        form_bracket(P, N.dual(a), b)
        + form_bracket(P, a, N.dual(b))
        - N.dual(form_bracket(P, a, b))
    )


# --- PN compatibility ------------------------------------------------------

@dataclass(frozen=True)
class ItemVerdict:
    """Verdict on one Poisson-Nijenhuis item, with a printable witness."""

    item: str
    verdict: str  # 'pass', 'fail' or 'error'
    witness_label: Optional[str] = None
    witness: Optional[Poly] = None
    note: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.verdict == 'pass'


def _names(space: ChartSpace, indices: Sequence[int]) -> str:
    return ', '.join(space.coord_names[i] for i in indices)


def schouten_verdict(P: Bivector) -> ItemVerdict:
    square = schouten_square(P)
    for key, value in square.items():
        # [P,P] = 2·Jac, so the Jacobiator on the coordinate triple is value / 2.
        return ItemVerdict('schouten_square', 'fail',
                           f"Jac({_names(P.space, key)})", value * Fraction(1, 2))
    return ItemVerdict('schouten_square', 'pass')


def torsion_verdict(N: EndoField) -> ItemVerdict:
    found = nijenhuis_torsion(N).first_nonzero()
    if found is None:
        return ItemVerdict('torsion', 'pass')
    i, j, k, value = found
    names = N.space.coord_names
    return ItemVerdict('torsion', 'fail', f"τN(∂{names[i]}, ∂{names[j]})^{names[k]}", value)


def compose_verdict(N: EndoField, P: Bivector) -> ItemVerdict:
    result = endo_compose_bivector(N, P)
    if result.ok:
        return ItemVerdict('sharp_compatibility', 'pass')
    return ItemVerdict('sharp_compatibility', 'fail',
                       f"sym(N∘P♯)^({_names(P.space, result.indices)})", result.witness)


def concomitant_verdict(P: Bivector, N: EndoField) -> ItemVerdict:
    """C(P, N) on all coordinate differentials dx_i, dx_j with i < j."""
    space = P.space
    try:
        require_bivector(N, P)
    except NotABivectorError as exc:
        return ItemVerdict('concomitant', 'error', f"sym(N∘P♯)^({_names(space, exc.indices)})",
                           exc.witness, note=str(exc))
    forms = [OneForm.coordinate(space, i) for i in range(space.dim)]
    for i, j in itertools.combinations(range(space.dim), 2):
        value = magri_morosi(P, N, forms[i], forms[j])
        for k, component in enumerate(value.components):
            if component:
                names = space.coord_names
                return ItemVerdict('concomitant', 'fail',
                                   f"C(d{names[i]}, d{names[j]})_{names[k]}", component)
    return ItemVerdict('concomitant', 'pass')


def pn_manifold_check(P: Bivector, N: EndoField) -> Tuple[ItemVerdict, ...]:
    """
    The four Poisson-Nijenhuis compatibility items for (P, N) on one chart.

    Returns, in order: Schouten square vanishes, torsion vanishes, NP is a
    bivector, concomitant vanishes on coordinate differentials. Testing the
    concomitant on dx_i, dx_j suffices because it is C∞-bilinear once NP is a
    bivector.
    """
    require_same_chart(P.space, N.space)
    verdicts = (
        schouten_verdict(P),
        torsion_verdict(N),
        compose_verdict(N, P),
        concomitant_verdict(P, N),
    )
    logger.debug("PN check on %s: %s", P.space, [v.verdict for v in verdicts])
    return verdicts
