"""
Invariant extension and restriction of algebroid data on the pair groupoid.

Right-invariant extensions (s-fibers are {(·, y)}, right translations act as
the identity on the x-block):

    X   ↦ (X(x), 0)
    Λ   ↦ Λ(x) on the xx-block
    n   ↦ n(x) ⊕ n(y)

Left-invariant extensions are the pushforward of the right ones along the
inversion i(x, y) = (y, x). Restriction substitutes y := x and keeps the
xx-block; the left restriction pushes forward along i first.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from components.pair_groupoid import PairGroupoid
from utils.constants import CONVENTIONS
from utils.errors import DimensionError, NotSVerticalError
from utils.symexpr import Poly, require_same_chart
from utils.tensorcalc import Bivector, EndoField, Multivector, OneForm, Trivector, VectorField

logger = logging.getLogger(__name__)

Tensor = Union[VectorField, OneForm, Bivector, Trivector, EndoField]


def _require_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"Invalid convention '{convention}'. Must be one of: {', '.join(CONVENTIONS)}")


# --- pushforward along polynomial diffeomorphisms --------------------------

def _jacobian(images: Sequence[Poly]) -> List[List[Poly]]:
    """J[i][k] = ∂_k images[i]."""
    return [[img.partial(k) for k in range(img.space.dim)] for img in images]


def pushforward(tensor: Tensor, phi: Sequence[Poly], phi_inverse: Sequence[Poly]) -> Tensor:
    """
    Push a tensor field forward along the diffeomorphism ``phi``.

    ``phi`` and ``phi_inverse`` are component polynomials on the tensor's chart.
    With ψ = phi_inverse the result at q is computed at ψ(q):

        vectors      (φ_*X)^i   = Σ_k ∂_kφ^i X^k ∘ ψ
        multivectors (φ_*P)^{ij..} = Σ ∂_kφ^i ∂_lφ^j .. P^{kl..} ∘ ψ
        1-forms      (ψ^*a)_j   = Σ_i a_i∘ψ ∂_jψ^i
        (1,1)        (φ_*N)^i_j = Σ_{k,l} (∂_kφ^i N^k_l)∘ψ ∂_jψ^l
    """
    space = tensor.space
    if len(phi) != space.dim or len(phi_inverse) != space.dim:
        raise DimensionError(f"pushforward needs {space.dim} component polynomials")
    require_same_chart(space, *(p.space for p in phi), *(p.space for p in phi_inverse))
    n = space.dim
    back = list(phi_inverse)
    # Jacobian of φ, composed with ψ, keeping only nonzero entries per row.
    J = [[(k, d.compose(back)) for k, d in enumerate(row) if d] for row in _jacobian(phi)]
    K = _jacobian(phi_inverse)

    if isinstance(tensor, VectorField):
        moved = [c.compose(back) for c in tensor.components]
        return VectorField(space, tuple(
            sum((d * moved[k] for k, d in J[i]), Poly(space)) for i in range(n)
        ))
    if isinstance(tensor, OneForm):
        moved = [c.compose(back) for c in tensor.components]
        return OneForm(space, tuple(
            sum((moved[i] * K[i][j] for i in range(n) if K[i][j]), Poly(space)) for j in range(n)
        ))
    if isinstance(tensor, EndoField):
        moved = [[v.compose(back) for v in row] for row in tensor.matrix]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                total = Poly(space)
                for k, d in J[i]:
                    for l in range(n):
                        if moved[k][l] and K[l][j]:
                            total = total + d * moved[k][l] * K[l][j]
                row.append(total)
            rows.append(tuple(row))
        return EndoField(space, tuple(rows))
    if isinstance(tensor, Multivector):
        moved = type(tensor)(space, {key: value.compose(back) for key, value in tensor.items()})
        components = {}
        for out in itertools.combinations(range(n), tensor.rank):
            total = Poly(space)
            for choice in itertools.product(*(J[i] for i in out)):
                value = moved.entry(*(k for k, _ in choice))
                if not value:
                    continue
                for _, d in choice:
                    value = value * d
                total = total + value
            components[out] = total
        return type(tensor)(space, components)
    raise TypeError(f"Cannot push forward {type(tensor).__name__}")


def _to_left(G: PairGroupoid, tensor: Tensor) -> Tensor:
    swap = G.inversion()
    return pushforward(tensor, swap, swap)


# --- extension -------------------------------------------------------------

def extend_vector(G: PairGroupoid, X: VectorField, convention: str = 'right') -> VectorField:
    """Invariant vector field on M×M induced by a section X of AG = TM."""
    _require_convention(convention)
    require_same_chart(G.base, X.space)
    zero = Poly(G.total)
    right = VectorField(G.total, tuple(G.embed(c) for c in X.components) + (zero,) * G.n)
    return right if convention == 'right' else _to_left(G, right)


def extend_oneform(G: PairGroupoid, a: OneForm, convention: str = 'right') -> OneForm:
    """Base 1-form placed on the x-block (right) or the y-block (left)."""
    _require_convention(convention)
    require_same_chart(G.base, a.space)
    zero = Poly(G.total)
    right = OneForm(G.total, tuple(G.embed(c) for c in a.components) + (zero,) * G.n)
    return right if convention == 'right' else _to_left(G, right)


def extend_bivector(G: PairGroupoid, L: Bivector, convention: str = 'right') -> Bivector:
    """Π = →Λ: Λ in x-variables on the xx-block, all other blocks zero."""
    _require_convention(convention)
    require_same_chart(G.base, L.space)
    right = Bivector(G.total, {key: G.embed(value) for key, value in L.items()})
    return right if convention == 'right' else _to_left(G, right)


def extend_trivector(G: PairGroupoid, T: Trivector, convention: str = 'right') -> Trivector:
    _require_convention(convention)
    require_same_chart(G.base, T.space)
    right = Trivector(G.total, {key: G.embed(value) for key, value in T.items()})
    return right if convention == 'right' else _to_left(G, right)


def extend_endo(G: PairGroupoid, n: EndoField, convention: str = 'right') -> EndoField:
    """
    N = →n: block-diagonal n(x) ⊕ n(y).

    The block-diagonal form is invariant under the inversion, so both
    conventions return the same tensor. N_M is n itself.
    """
    _require_convention(convention)
    require_same_chart(G.base, n.space)
    size = G.n
    entries = {}
    for i in range(size):
        for j in range(size):
            value = n.entry(i, j)
            if value:
                entries[(G.x_index(i), G.x_index(j))] = G.embed(value, 'x')
                entries[(G.y_index(i), G.y_index(j))] = G.embed(value, 'y')
    right = EndoField.from_entries(G.total, entries)
    return right if convention == 'right' else _to_left(G, right)


def classical_lift(G: PairGroupoid, L: Bivector) -> Bivector:
    """The multiplicative Poisson structure Λ(x) ⊕ (-Λ(y)) on M×M."""
    require_same_chart(G.base, L.space)
    components = {}
    for (i, j), value in L.items():
        components[(G.x_index(i), G.x_index(j))] = G.embed(value, 'x')
        components[(G.y_index(i), G.y_index(j))] = -G.embed(value, 'y')
    return Bivector(G.total, components)


# --- restriction -----------------------------------------------------------

def _block_label(G: PairGroupoid, *indices: int) -> str:
    return ' '.join(G.label(i) for i in indices)


def restrict(G: PairGroupoid, tensor: Tensor, convention: str = 'right') -> Tensor:
    """
    Restrict a total-space tensor to the units and keep the xx-block.

    Raises:
        NotSVerticalError: For a vector field or bivector whose non-x components
            are nonzero at the units
    """
    _require_convention(convention)
    require_same_chart(G.total, tensor.space)
    if convention == 'left':
        tensor = _to_left(G, tensor)
    n = G.n
    if isinstance(tensor, VectorField):
        for i in range(n, 2 * n):
            value = G.at_units(tensor[i])
            if value:
                raise NotSVerticalError(f"∂{G.label(i)}", value)
        return VectorField(G.base, tuple(G.at_units(tensor[i]) for i in range(n)))
    if isinstance(tensor, OneForm):
        return OneForm(G.base, tuple(G.at_units(tensor[i]) for i in range(n)))
    if isinstance(tensor, EndoField):
        return EndoField(G.base, tuple(
            tuple(G.at_units(tensor.entry(i, j)) for j in range(n)) for i in range(n)
        ))
    if isinstance(tensor, Multivector):
        components = {}
        for key, value in tensor.items():
            at_units = G.at_units(value)
            if not at_units:
                continue
            if any(k >= n for k in key):
                raise NotSVerticalError(_block_label(G, *key), at_units)
            components[key] = at_units
        return type(tensor)(G.base, components)
    raise TypeError(f"Cannot restrict {type(tensor).__name__}")


# --- invariance ------------------------------------------------------------

@dataclass(frozen=True)
class InvarianceResult:
    ok: bool
    label: Optional[str] = None
    witness: Optional[Poly] = None


def _y_dependence(G: PairGroupoid, value: Poly) -> Optional[str]:
    for i in value.variables():
        if i >= G.n:
            return G.label(i)
    return None


def is_invariant(G: PairGroupoid, tensor: Union[Bivector, EndoField], convention: str = 'right') -> InvarianceResult:
    """
    Right invariance (or left, after pushing forward along the inversion).

    A bivector is right-invariant iff its xy- and yy-components vanish and
    its xx-components do not depend on y. A (1,1)-tensor is right-invariant
    iff it equals the extension of its restricted xx-block. The witness is the
    first failing component.
    """
    _require_convention(convention)
    require_same_chart(G.total, tensor.space)
    if convention == 'left':
        tensor = _to_left(G, tensor)
    n = G.n
    if isinstance(tensor, Bivector):
        for key, value in tensor.items():
            if any(k >= n for k in key):
                return InvarianceResult(False, f"Π^({_block_label(G, *key)})", value)
            depends = _y_dependence(G, value)
            if depends is not None:
                return InvarianceResult(False, f"Π^({_block_label(G, *key)}) depends on {depends}", value)
        return InvarianceResult(True)
    if isinstance(tensor, EndoField):
        expected = extend_endo(G, restrict(G, tensor))
        for i in range(2 * n):
            for j in range(2 * n):
                difference = tensor.entry(i, j) - expected.entry(i, j)
                if difference:
                    return InvarianceResult(False, f"N^{G.label(i)}_{G.label(j)}", difference)
        return InvarianceResult(True)
    raise TypeError(f"Invariance is defined for bivectors and (1,1)-tensors, got {type(tensor).__name__}")
