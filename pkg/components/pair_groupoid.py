"""
The pair groupoid M×M ⇉ M and its tangent and cotangent groupoids.

Conventions, fixed once and used everywhere:

    s(x, y) = y        t(x, y) = x        u(x) = (x, x)
    i(x, y) = (y, x)   m((x, y), (y, z)) = (x, z)

    TG ⇉ TM:   Ts(v, w) = w at y, Tt(v, w) = v at x, Tu(v) = (v, v),
               Ti(v, w) = (w, v), Tm((v, w), (w, u)) = (v, u)
    T*G ⇉ T*M: s~(ξ, η) = -η at y, t~(ξ, η) = ξ at x, u~(α) = (α, -α),
               i~(ξ, η) = (-η, -ξ), m~((ξ, η), (-η, ζ)) = (ξ, ζ)

The structure maps are written against plain tuples of values, so the same
code runs on rational points and on formal symbols (Polys over a chart of
symbol names), where every check is a universally quantified identity.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, fields, is_dataclass
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from utils.errors import CompositionError, DimensionError
from utils.symexpr import ChartSpace, Poly, require_same_chart
from utils.tensorcalc import Bivector, EndoField

logger = logging.getLogger(__name__)

Vector = Tuple  # tuple of Polys or rationals


def _neg(values: Sequence) -> Tuple:
    return tuple(-v for v in values)


def _check_lengths(*blocks: Sequence) -> None:
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise DimensionError(f"Block lengths differ: {sorted(sizes)}")


# --- the pair groupoid as charts -------------------------------------------

def _y_names(base: ChartSpace) -> Tuple[str, ...]:
    used = set(base.coord_names)
    names = []
    for coord in base.coord_names:
        candidate = f"y{coord[1:]}" if coord.startswith('x') and coord[1:].isdigit() else f"{coord}_y"
        if candidate in used:
            candidate = f"{coord}_y"
        while candidate in used:
            candidate += '_y'
        used.add(candidate)
        names.append(candidate)
    return tuple(names)


@dataclass(frozen=True)
class PairGroupoid:
    """Base chart M and total chart M×M with coordinates (x | y)."""

    base: ChartSpace
    total: ChartSpace

    @classmethod
    def over(cls, base: ChartSpace) -> 'PairGroupoid':
        total = ChartSpace(base.coord_names + _y_names(base), name=f"{base.name}x{base.name}")
        return cls(base, total)

    @property
    def n(self) -> int:
        return self.base.dim

    def x_index(self, i: int) -> int:
        return i

    def y_index(self, i: int) -> int:
        return self.n + i

    def x_coords(self) -> Tuple[Poly, ...]:
        return self.total.coordinates()[:self.n]

    def y_coords(self) -> Tuple[Poly, ...]:
        return self.total.coordinates()[self.n:]

    def embed(self, p: Poly, block: str = 'x') -> Poly:
        """A base polynomial read in the x- or y-variables of the total chart."""
        require_same_chart(self.base, p.space)
        return p.compose(self.x_coords() if block == 'x' else self.y_coords())

    def at_units(self, p: Poly) -> Poly:
        """Restrict a total polynomial to the units: substitute y := x."""
        require_same_chart(self.total, p.space)
        coords = self.base.coordinates()
        return p.compose(coords + coords)

    def inversion(self) -> Tuple[Poly, ...]:
        """i(x, y) = (y, x) as component polynomials; it is its own inverse."""
        return self.y_coords() + self.x_coords()

    def label(self, i: int) -> str:
        return self.total.coord_names[i]


@dataclass(frozen=True)
class AlgebroidData:
    """(Λ, n) on the Lie algebroid AG = TM of the pair groupoid, anchor = id."""

    base: ChartSpace
    lam: Bivector
    n: EndoField

    def __post_init__(self):
        require_same_chart(self.base, self.lam.space, self.n.space)


# --- groupoid elements -----------------------------------------------------

@dataclass(frozen=True)
class PairArrow:
    """Arrow (x, y) of M×M, from y to x."""

    x: Vector
    y: Vector

    def __post_init__(self):
        _check_lengths(self.x, self.y)


@dataclass(frozen=True)
class TangentElement:
    """Element (v, w) of TG at the arrow (x, y)."""

    x: Vector
    y: Vector
    v: Vector
    w: Vector

    def __post_init__(self):
        _check_lengths(self.x, self.y, self.v, self.w)

    @property
    def fibers(self) -> Tuple[Vector, Vector]:
        return self.v, self.w


@dataclass(frozen=True)
class CotangentElement:
    """Element (ξ, η) of T*G at the arrow (x, y)."""

    x: Vector
    y: Vector
    xi: Vector
    eta: Vector

    def __post_init__(self):
        _check_lengths(self.x, self.y, self.xi, self.eta)

    @property
    def fibers(self) -> Tuple[Vector, Vector]:
        return self.xi, self.eta


# --- structure maps --------------------------------------------------------

class PairGroupoidMaps:
    """Structure maps of M×M ⇉ M; objects are points."""

    name = 'base'

    def source(self, g: PairArrow) -> Vector:
        return tuple(g.y)

    def target(self, g: PairArrow) -> Vector:
        return tuple(g.x)

    def unit(self, p: Vector) -> PairArrow:
        return PairArrow(tuple(p), tuple(p))

    def inverse(self, g: PairArrow) -> PairArrow:
        return PairArrow(g.y, g.x)

    def composable(self, g, h) -> bool:
        return self.source(g) == self.target(h)

    def multiply(self, g: PairArrow, h: PairArrow) -> PairArrow:
        if not self.composable(g, h):
            raise CompositionError(f"Arrows are not composable: s(g) = {_show(self.source(g))}, "
                                   f"t(h) = {_show(self.target(h))}")
        return PairArrow(g.x, h.y)


class _FiberedPairGroupoidMaps(PairGroupoidMaps):
    """
    Tangent or cotangent groupoid of M×M; objects are (point, fiber) pairs.

    ``sign`` is +1 for TG ⇉ TM and -1 for T*G ⇉ T*M. With it the source reads
    the second fiber times ``sign``, units are (a, sign·a) and inversion maps
    (f1, f2) to (sign·f2, sign·f1).
    """

    sign = 1
    element = TangentElement

    def _signed(self, values: Vector) -> Vector:
        return tuple(values) if self.sign > 0 else _neg(values)

    def source(self, g) -> Tuple[Vector, Vector]:
        return tuple(g.y), self._signed(g.fibers[1])

    def target(self, g) -> Tuple[Vector, Vector]:
        return tuple(g.x), tuple(g.fibers[0])

    def unit(self, obj: Tuple[Vector, Vector]):
        point, fiber = obj
        return self.element(tuple(point), tuple(point), tuple(fiber), self._signed(fiber))

    def inverse(self, g):
        first, second = g.fibers
        return self.element(g.y, g.x, self._signed(second), self._signed(first))

    def multiply(self, g, h):
        if not self.composable(g, h):
            raise CompositionError(f"Elements are not composable: source {_show(self.source(g))}, "
                                   f"target {_show(self.target(h))}")
        return self.element(g.x, h.y, g.fibers[0], h.fibers[1])


class TangentGroupoidMaps(_FiberedPairGroupoidMaps):
    name = 'tangent'
    sign = 1
    element = TangentElement


class CotangentGroupoidMaps(_FiberedPairGroupoidMaps):
    name = 'cotangent'
    sign = -1
    element = CotangentElement


BASE_MAPS = PairGroupoidMaps()
TANGENT_MAPS = TangentGroupoidMaps()
COTANGENT_MAPS = CotangentGroupoidMaps()


def groupoid_maps(g: PairArrow, h: PairArrow) -> dict:
    """s, t, u, i of ``g`` and the product ``g·h`` (``CompositionError`` if not composable)."""
    G = BASE_MAPS
    return {
        's': G.source(g),
        't': G.target(g),
        'u': G.unit(G.source(g)),
        'i': G.inverse(g),
        'm': G.multiply(g, h),
    }


def tangent_maps(V: TangentElement, W: TangentElement) -> dict:
    """Ts, Tt, Tu, Ti of ``V`` and the product ``Tm(V, W)``."""
    G = TANGENT_MAPS
    return {
        'Ts': G.source(V),
        'Tt': G.target(V),
        'Tu': G.unit(G.source(V)),
        'Ti': G.inverse(V),
        'Tm': G.multiply(V, W),
    }


def cotangent_maps(C1: CotangentElement, C2: CotangentElement) -> dict:
    """s~, t~, u~, i~ of ``C1`` and the product ``m~(C1, C2)``."""
    G = COTANGENT_MAPS
    return {
        's': G.source(C1),
        't': G.target(C1),
        'u': G.unit(G.source(C1)),
        'i': G.inverse(C1),
        'm': G.multiply(C1, C2),
    }


# --- formal symbols --------------------------------------------------------

FORMAL_POINTS = ('x', 'y', 'z', 't')
FORMAL_VECTORS = ('v', 'w', 'u', 'r')
FORMAL_COVECTORS = ('xi', 'eta', 'zeta', 'theta')


@dataclass(frozen=True)
class FormalSymbols:
    """
    Chart of formal symbols for universally quantified groupoid identities.

    For base dimension n it carries n-blocks of point symbols x, y, z, t,
    vector symbols v, w, u, r and covector symbols xi, eta, zeta, theta
    (names like ``eta2``).
    """

    n: int
    chart: ChartSpace

    @classmethod
    def of_dimension(cls, n: int) -> 'FormalSymbols':
        prefixes = FORMAL_POINTS + FORMAL_VECTORS + FORMAL_COVECTORS
        names = tuple(f"{p}{k}" for p in prefixes for k in range(1, n + 1))
        return cls(n, ChartSpace(names, name='formal'))

    def block(self, prefix: str) -> Tuple[Poly, ...]:
        start = self.chart.index(f"{prefix}1")
        return self.chart.coordinates()[start:start + self.n]

    def block_indices(self, prefix: str) -> Tuple[int, ...]:
        start = self.chart.index(f"{prefix}1")
        return tuple(range(start, start + self.n))

    def base_chain(self) -> Tuple[PairArrow, PairArrow, PairArrow]:
        x, y, z, t = (self.block(p) for p in FORMAL_POINTS)
        return PairArrow(x, y), PairArrow(y, z), PairArrow(z, t)

    def tangent_chain(self) -> Tuple[TangentElement, TangentElement, TangentElement]:
        x, y, z, t = (self.block(p) for p in FORMAL_POINTS)
        v, w, u, r = (self.block(p) for p in FORMAL_VECTORS)
        return TangentElement(x, y, v, w), TangentElement(y, z, w, u), TangentElement(z, t, u, r)

    def cotangent_chain(self) -> Tuple[CotangentElement, CotangentElement, CotangentElement]:
        x, y, z, t = (self.block(p) for p in FORMAL_POINTS)
        xi, eta, zeta, theta = (self.block(p) for p in FORMAL_COVECTORS)
        return (CotangentElement(x, y, xi, eta),
                CotangentElement(y, z, _neg(eta), zeta),
                CotangentElement(z, t, _neg(zeta), theta))

    def chain_for(self, maps: PairGroupoidMaps):
        if maps.name == 'tangent':
            return self.tangent_chain()
        if maps.name == 'cotangent':
            return self.cotangent_chain()
        return self.base_chain()


# --- identity checking -----------------------------------------------------

@dataclass(frozen=True)
class IdentityResult:
    """An exact identity; ``label``/``witness`` name the first nonzero residual."""

    condition: str
    label: Optional[str] = None
    witness: Optional[object] = None
    note: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.label is None


def _flatten(value, prefix: str = '') -> Iterator[Tuple[str, object]]:
    if is_dataclass(value):
        for f in fields(value):
            yield from _flatten(getattr(value, f.name), f.name)
    elif isinstance(value, tuple) and value and isinstance(value[0], tuple):
        for part, name in zip(value, ('point', 'fiber')):
            yield from _flatten(part, name)
    else:
        for k, item in enumerate(value, start=1):
            yield f"{prefix}{k}", item


def _show(value) -> str:
    return '(' + ', '.join(f"{label}={item}" for label, item in _flatten(value)) + ')'


def first_residual(lhs, rhs) -> Optional[Tuple[str, object]]:
    """(label, lhs - rhs) at the first slot where the two sides differ, else None."""
    left = list(_flatten(lhs))
    right = list(_flatten(rhs))
    if len(left) != len(right):
        raise DimensionError(f"Cannot compare values with {len(left)} and {len(right)} slots")
    for (label, a), (_, b) in zip(left, right):
        difference = a - b
        if difference:
            return label, difference
    return None


def compare(condition: str, lhs, rhs) -> IdentityResult:
    found = first_residual(lhs, rhs)
    if found is None:
        return IdentityResult(condition)
    label, difference = found
    return IdentityResult(condition, f"{condition}[{label}]", difference)


def _product(maps: PairGroupoidMaps, condition: str, g, h):
    try:
        return maps.multiply(g, h), None
    except CompositionError as exc:
        result = compare(condition, maps.source(g), maps.target(h))
        return None, IdentityResult(condition, result.label or condition, result.witness, note=str(exc))


def check_groupoid_axioms(maps: PairGroupoidMaps, chain) -> Tuple[IdentityResult, ...]:
    """
    The groupoid axioms as exact identities on a composable chain (g, h, k):

        s(gh) = s(h), t(gh) = t(g)
        (gh)k = g(hk)
        1_{t(g)} g = g = g 1_{s(g)}
        g g^-1 = 1_{t(g)}, g^-1 g = 1_{s(g)}
    """
    g, h, k = chain
    results: List[IdentityResult] = []

    gh, failure = _product(maps, 'composition', g, h)
    if failure is not None:
        return (failure,)
    results.append(compare('source_of_product', maps.source(gh), maps.source(h)))
    results.append(compare('target_of_product', maps.target(gh), maps.target(g)))

    hk, failure = _product(maps, 'composition', h, k)
    if failure is not None:
        return tuple(results) + (failure,)
    left, fail_left = _product(maps, 'associativity', gh, k)
    right, fail_right = _product(maps, 'associativity', g, hk)
    if fail_left or fail_right:
        results.append(fail_left or fail_right)
    else:
        results.append(compare('associativity', left, right))

    for condition, a, b, expected in (
        ('left_unit', maps.unit(maps.target(g)), g, g),
        ('right_unit', g, maps.unit(maps.source(g)), g),
        ('right_inverse', g, maps.inverse(g), maps.unit(maps.target(g))),
        ('left_inverse', maps.inverse(g), g, maps.unit(maps.source(g))),
    ):
        product, failure = _product(maps, condition, a, b)
        results.append(failure if failure is not None else compare(condition, product, expected))

    logger.debug("%s groupoid axioms: %s", maps.name, [r.ok for r in results])
    return tuple(results)


def check_morphism(
    F: Callable,
    f: Callable,
    source: PairGroupoidMaps,
    target: PairGroupoidMaps,
    chain,
) -> Tuple[IdentityResult, ...]:
    """
    Groupoid morphism conditions for (F, f) on a composable pair (g, h):

        s'∘F = f∘s,   t'∘F = f∘t,   F(1_p) = 1'_{f(p)},   F(gh) = F(g)F(h)

    The unit condition is evaluated at p = s(g).
    """
    g, h = chain[0], chain[1]
    Fg, Fh = F(g), F(h)
    results = [
        compare('source', target.source(Fg), f(source.source(g))),
        compare('target', target.target(Fg), f(source.target(g))),
        compare('unit', F(source.unit(source.source(g))), target.unit(f(source.source(g)))),
    ]
    lhs = F(source.multiply(g, h))
    rhs, failure = _product(target, 'multiplication', Fg, Fh)
    results.append(failure if failure is not None else compare('multiplication', lhs, rhs))
    return tuple(results)
