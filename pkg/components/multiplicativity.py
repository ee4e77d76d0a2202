"""
Multiplicativity of bivectors and (1,1)-tensors on the pair groupoid.

A bivector P on M×M is multiplicative when P♯: T*G → TG is a groupoid
morphism over some base map A*G = T*M → TM; a pair (N, n_M) is multiplicative
when N: TG → TG is a morphism over n_M: TM → TM. Both are verified over
formal symbols, so a pass is an identity in all points, vectors and
covectors.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from components.pair_groupoid import (
    COTANGENT_MAPS,
    TANGENT_MAPS,
    CotangentElement,
    FormalSymbols,
    IdentityResult,
    PairGroupoid,
    TangentElement,
    check_morphism,
    compare,
)
from utils.symexpr import Poly, require_same_chart
from utils.tensorcalc import Bivector, EndoField

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultiplicativityResult:
    """Ordered identity checks; the verdict is the first failure, if any."""

    results: Tuple[IdentityResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failure(self) -> Optional[IdentityResult]:
        return next((r for r in self.results if not r.ok), None)


def _linear(matrix, values: Sequence[Poly], chart) -> Tuple[Poly, ...]:
    return tuple(
        sum((m * v for m, v in zip(row, values) if m and v), Poly(chart)) for row in matrix
    )


def bivector_map(G: PairGroupoid, P: Bivector, symbols: FormalSymbols):
    """P♯ as a map of cotangent elements to tangent elements."""
    require_same_chart(G.total, P.space)
    size = 2 * G.n

    def apply(C: CotangentElement) -> TangentElement:
        images = tuple(C.x) + tuple(C.y)
        # sharp: component i = Σ_j P^{ji} a_j
        matrix = [[P.entry(j, i).compose(images) for j in range(size)] for i in range(size)]
        out = _linear(matrix, tuple(C.xi) + tuple(C.eta), symbols.chart)
        return TangentElement(C.x, C.y, out[:G.n], out[G.n:])

    return apply


def endo_map(G: PairGroupoid, N: EndoField, symbols: FormalSymbols):
    """N as a map of tangent elements."""
    require_same_chart(G.total, N.space)

    def apply(V: TangentElement) -> TangentElement:
        images = tuple(V.x) + tuple(V.y)
        matrix = [[value.compose(images) for value in row] for row in N.matrix]
        out = _linear(matrix, tuple(V.v) + tuple(V.w), symbols.chart)
        return TangentElement(V.x, V.y, out[:G.n], out[G.n:])

    return apply


def base_endo_map(G: PairGroupoid, n_M: EndoField, symbols: FormalSymbols):
    """n_M as a map of (point, vector) objects of TM."""
    require_same_chart(G.base, n_M.space)

    def apply(obj):
        point, vector = obj
        matrix = [[value.compose(tuple(point)) for value in row] for row in n_M.matrix]
        return tuple(point), _linear(matrix, tuple(vector), symbols.chart)

    return apply


def _stray_variable(values: Sequence[Poly], allowed: set, symbols: FormalSymbols):
    for k, value in enumerate(values):
        for i in value.variables():
            if i not in allowed:
                return k, symbols.chart.coord_names[i], value
    return None


def check_bivector_multiplicative(G: PairGroupoid, P: Bivector) -> MultiplicativityResult:
    """
    Whether P♯ is a morphism of the cotangent groupoid into the tangent groupoid.

    Checked in order, stopping at the first failure:
      (a) Ts∘P♯ depends only on (y, η) and Tt∘P♯ only on (x, ξ), so both
          factor through s~ and t~;
      (b) s~(C1) = t~(C2) implies Ts(P♯C1) = Tt(P♯C2);
      (c) P♯(m~(C1, C2)) = Tm(P♯C1, P♯C2);
      (d) the base map read off through s~ agrees with the one read off
          through t~, and units go to units.
    """
    symbols = FormalSymbols.of_dimension(G.n)
    F = bivector_map(G, P, symbols)
    C1, C2, _ = symbols.cotangent_chain()
    image = F(C1)
    results = []

    for condition, values, prefix, allowed in (
        ('factorization_source', image.w, 'w',
         set(symbols.block_indices('y')) | set(symbols.block_indices('eta'))),
        ('factorization_target', image.v, 'v',
         set(symbols.block_indices('x')) | set(symbols.block_indices('xi'))),
    ):
        stray = _stray_variable(values, allowed, symbols)
        if stray is not None:
            k, name, value = stray
            results.append(IdentityResult(condition, f"{condition}[{prefix}{k + 1}] depends on {name}", value))
            return MultiplicativityResult(tuple(results))
        results.append(IdentityResult(condition))

    results.append(compare('composability', TANGENT_MAPS.source(image), TANGENT_MAPS.target(F(C2))))
    if not results[-1].ok:
        return MultiplicativityResult(tuple(results))

    results.append(compare('multiplication',
                           F(COTANGENT_MAPS.multiply(C1, C2)),
                           TANGENT_MAPS.multiply(image, F(C2))))
    if not results[-1].ok:
        return MultiplicativityResult(tuple(results))

    y_slots = symbols.block_indices('y')
    eta_slots = symbols.block_indices('eta')

    def base_map(obj):
        # f(p, α) = Ts∘P♯ at y := p, η := -α
        point, covector = obj
        images = list(symbols.chart.coordinates())
        for k in range(G.n):
            images[y_slots[k]] = point[k]
            images[eta_slots[k]] = -covector[k]
        return tuple(point), tuple(w.compose(images) for w in image.w)

    for r in check_morphism(F, base_map, COTANGENT_MAPS, TANGENT_MAPS, (C1, C2)):
        if r.condition in ('target', 'unit'):
            name = 'base_maps' if r.condition == 'target' else 'unit'
            results.append(IdentityResult(name, r.label and r.label.replace('target', name, 1),
                                          r.witness, r.note))
    outcome = MultiplicativityResult(tuple(results))
    logger.debug("bivector multiplicativity: %s", outcome.ok)
    return outcome


def check_endo_multiplicative(G: PairGroupoid, N: EndoField, n_M: EndoField) -> MultiplicativityResult:
    """
    Whether (N, n_M) is a morphism of the tangent groupoid to itself:

        Ts∘N = n_M∘Ts,  Tt∘N = n_M∘Tt,  N(Tu(v)) = Tu(n_M v),
        N(Tm(V, W)) = Tm(NV, NW)
    """
    symbols = FormalSymbols.of_dimension(G.n)
    chain = symbols.tangent_chain()
    results = check_morphism(
        endo_map(G, N, symbols), base_endo_map(G, n_M, symbols), TANGENT_MAPS, TANGENT_MAPS, chain
    )
    outcome = MultiplicativityResult(tuple(results))
    logger.debug("(1,1)-tensor multiplicativity: %s", outcome.ok)
    return outcome
