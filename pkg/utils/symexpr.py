"""
Exact sparse multivariate polynomial arithmetic over a named coordinate chart.

A ``Poly`` stores a map from exponent multi-indices to nonzero ``Fraction``
coefficients. Storage is canonical (no zero coefficients, reduced fractions),
so structural equality is semantic equality and every "identity holds" check
in the toolkit reduces to ``poly.is_zero()``.

Coordinate indices are 0-based; wherever an index is accepted a coordinate
name is accepted too.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np

from utils.errors import ChartMismatchError, DimensionError, IndexRangeError, InvalidChartError

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction]
Exponent = Tuple[int, ...]
CoordRef = Union[int, str]

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class ChartSpace:
    """A single global chart: an ordered tuple of distinct coordinate names."""

    coord_names: Tuple[str, ...]
    name: str = field(default='M', compare=False)

    def __post_init__(self):
        names = tuple(self.coord_names)
        object.__setattr__(self, 'coord_names', names)
        if not names:
            raise DimensionError("A chart needs at least one coordinate")
        for coord in names:
            if not isinstance(coord, str) or not IDENTIFIER.match(coord):
                raise InvalidChartError(f"Invalid coordinate name '{coord}'")
        if len(set(names)) != len(names):
            raise InvalidChartError(f"Coordinate names must be distinct: {', '.join(names)}")

    @classmethod
    def euclidean(cls, dim: int, prefix: str = 'x', name: str = 'M') -> 'ChartSpace':
        """Chart with coordinates ``<prefix>1 .. <prefix><dim>``."""
        if dim < 1:
            raise DimensionError(f"Chart dimension must be positive, got {dim}")
        return cls(tuple(f"{prefix}{k}" for k in range(1, dim + 1)), name=name)

    @property
    def dim(self) -> int:
        return len(self.coord_names)

    def index(self, coord: CoordRef) -> int:
        """Resolve a coordinate name or 0-based index to an index."""
        if isinstance(coord, str):
            try:
                return self.coord_names.index(coord)
            except ValueError:
                raise IndexRangeError(
                    f"'{coord}' is not a coordinate of chart {self.name} "
                    f"({', '.join(self.coord_names)})"
                ) from None
        if isinstance(coord, bool) or not isinstance(coord, int):
            raise IndexRangeError(f"Coordinate index must be an int, got {coord!r}")
        if not 0 <= coord < self.dim:
            raise IndexRangeError(
                f"Coordinate index {coord} out of range for dimension {self.dim}"
            )
        return coord

    def zero(self) -> 'Poly':
        return Poly(self)

    def one(self) -> 'Poly':
        return Poly.constant(self, 1)

    def coordinate(self, coord: CoordRef) -> 'Poly':
        """The coordinate function x_i as a polynomial."""
        i = self.index(coord)
        exps = tuple(1 if k == i else 0 for k in range(self.dim))
        return Poly._make(self, {exps: Fraction(1)})

    def coordinates(self) -> Tuple['Poly', ...]:
        return tuple(self.coordinate(i) for i in range(self.dim))

    def __str__(self) -> str:
        return f"{self.name}({', '.join(self.coord_names)})"


def require_same_chart(*spaces: ChartSpace) -> ChartSpace:
    """Return the common chart or raise ``ChartMismatchError``."""
    first = spaces[0]
    for other in spaces[1:]:
        if other != first:
            raise ChartMismatchError(f"Chart mismatch: {first} vs {other}")
    return first


def _monomial_key(exps: Exponent):
    # Higher total degree first, then lexicographic in the coordinate order.
    return (-sum(exps), tuple(-e for e in exps))


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Poly:
    """
    Immutable polynomial with exact rational coefficients over a ChartSpace.

    Supports ``+``, ``-``, ``*`` and ``**`` with other Polys over the same
    chart and with int/Fraction scalars.

    Example:
        >>> M = ChartSpace(('x1', 'x2'))
        >>> x1, x2 = M.coordinates()
        >>> str(x1 * (x2 + Fraction(3, 2)) ** 2)
        'x1*x2^2 + 3*x1*x2 + 9/4*x1'
    """

    __slots__ = ('space', '_terms', '_hash')

    def __init__(self, space: ChartSpace, terms: Mapping[Sequence[int], Scalar] = None):
        clean: Dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != space.dim:
                raise DimensionError(
                    f"Exponent {exps} has length {len(exps)}, chart dimension is {space.dim}"
                )
            if any(isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in exps):
                raise ValueError(f"Exponents must be nonnegative integers, got {exps}")
            value = Fraction(coeff)
            if value:
                clean[exps] = value
        object.__setattr__(self, 'space', space)
        object.__setattr__(self, '_terms', clean)
        object.__setattr__(self, '_hash', None)

    @classmethod
    def _make(cls, space: ChartSpace, clean: Dict[Exponent, Fraction]) -> 'Poly':
        # Trusted constructor: `clean` already canonical.
        poly = object.__new__(cls)
        object.__setattr__(poly, 'space', space)
        object.__setattr__(poly, '_terms', clean)
        object.__setattr__(poly, '_hash', None)
        return poly

    @classmethod
    def constant(cls, space: ChartSpace, value: Scalar) -> 'Poly':
        value = Fraction(value)
        if not value:
            return cls._make(space, {})
        return cls._make(space, {(0,) * space.dim: value})

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # --- inspection --------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.space.dim, Fraction(0))

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(exps) for exps in self._terms), default=-1)

    def depends_on(self, coord: CoordRef) -> bool:
        i = self.space.index(coord)
        return any(exps[i] for exps in self._terms)

    def variables(self) -> Tuple[int, ...]:
        """Indices of the coordinates that occur in the polynomial."""
        return tuple(i for i in range(self.space.dim) if any(exps[i] for exps in self._terms))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.space == other.space and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.constant(self.space, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, '_hash', hash((self.space, frozenset(self._terms.items()))))
        return self._hash

    # --- ring operations ---------------------------------------------------

    def _coerce(self, other) -> 'Poly':
        if isinstance(other, Poly):
            require_same_chart(self.space, other.space)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.constant(self.space, other)
        return NotImplemented

    def __add__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self._terms)
        for exps, coeff in other._terms.items():
            total = result.get(exps, 0) + coeff
            if total:
                result[exps] = total
            else:
                result.pop(exps, None)
        return Poly._make(self.space, result)

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return Poly._make(self.space, {exps: -c for exps, c in self._terms.items()})

    def __sub__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                result[exps] = result.get(exps, 0) + c1 * c2
        return Poly._make(self.space, {e: c for e, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'Poly':
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ValueError(f"Polynomial powers must be nonnegative integers, got {n!r}")
        result = Poly.constant(self.space, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # --- calculus and evaluation -------------------------------------------

    def partial(self, coord: CoordRef) -> 'Poly':
        """Formal partial derivative with respect to one coordinate."""
        i = self.space.index(coord)
        result: Dict[Exponent, Fraction] = {}
        for exps, coeff in self._terms.items():
            power = exps[i]
            if power:
                lowered = exps[:i] + (power - 1,) + exps[i + 1:]
                result[lowered] = coeff * power
        return Poly._make(self.space, result)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.space.dim:
            raise DimensionError(
                f"Point has {len(point)} coordinates, chart dimension is {self.space.dim}"
            )
        values = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for value, power in zip(values, exps):
                if power:
                    term *= value ** power
            total += term
        return total

    def compose(self, images: Sequence['Poly']) -> 'Poly':
        """
        Substitute coordinate k by ``images[k]``.

        All images must live on one target chart, which is the chart of the
        result. This is how blocks are embedded into a product chart and how
        tensors are pulled back along polynomial maps.
        """
        if len(images) != self.space.dim:
            raise DimensionError(
                f"compose needs {self.space.dim} images, got {len(images)}"
            )
        if not images:
            raise DimensionError("compose needs at least one image")
        target = require_same_chart(*(img.space for img in images))
        powers: List[Dict[int, Poly]] = [{0: Poly.constant(target, 1), 1: img} for img in images]

        def power_of(k: int, n: int) -> Poly:
            cache = powers[k]
            if n not in cache:
                cache[n] = images[k] ** n
            return cache[n]

        result = Poly(target)
        for exps, coeff in self._terms.items():
            term = Poly.constant(target, coeff)
            for k, n in enumerate(exps):
                if n:
                    term = term * power_of(k, n)
            result = result + term
        return result

    def float_terms(self) -> Tuple[np.ndarray, np.ndarray]:
        """Exponent matrix and float coefficients, for vectorised evaluation."""
        if not self._terms:
            return np.zeros((0, self.space.dim), dtype=np.int64), np.zeros(0)
        exps = np.array(list(self._terms.keys()), dtype=np.int64)
        coeffs = np.array([float(c) for c in self._terms.values()])
        return exps, coeffs

    # --- printing ----------------------------------------------------------

    def _monomial_text(self, exps: Exponent) -> str:
        factors = []
        for name, power in zip(self.space.coord_names, exps):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        return '*'.join(factors)

    def to_expr(self) -> str:
        """Canonical text in the expression grammar accepted by ``parse_expr``."""
        if not self._terms:
            return '0'
        pieces = []
        for exps in sorted(self._terms, key=_monomial_key):
            coeff = self._terms[exps]
            sign = '-' if coeff < 0 else '+'
            magnitude = abs(coeff)
            monomial = self._monomial_text(exps)
            if not monomial:
                body = _format_rational(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{_format_rational(magnitude)}*{monomial}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = f"-{first_body}" if first_sign == '-' else first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_expr()

    def __repr__(self) -> str:
        return f"Poly('{self.to_expr()}', chart={self.space.name})"


def poly_arith(a: Poly, b: Poly, kind: str) -> Poly:
    """
    Exact ring operation in canonical form.

    Args:
        a, b: Polynomials over the same chart
        kind: One of 'add', 'sub', 'mul'

    Raises:
        ChartMismatchError: If the charts differ
        ValueError: If kind is not recognised
    """
    require_same_chart(a.space, b.space)
    if kind == 'add':
        return a + b
    if kind == 'sub':
        return a - b
    if kind == 'mul':
        return a * b
    raise ValueError(f"Invalid kind '{kind}'. Must be one of: add, sub, mul")


def partial(p: Poly, coord: CoordRef) -> Poly:
    return p.partial(coord)


def evaluate(p: Poly, point: Sequence[Scalar]) -> Fraction:
    return p.evaluate(point)


def linear_combination(coeffs: Iterable[Poly], polys: Iterable[Poly], space: ChartSpace) -> Poly:
    """Σ coeffs[k]·polys[k], starting from the zero polynomial of ``space``."""
    total = Poly(space)
    for c, p in zip(coeffs, polys):
        if c and p:
            total = total + c * p
    return total
