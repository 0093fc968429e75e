"""
Ideals over QQ: Groebner bases, elimination, saturation, dimension.

Groebner bases come from sympy's Buchberger implementation (normal selection
strategy with Gebauer-Moeller pair criteria) run on the ring whose monomial
order is requested; results are stored back in the context's grevlex ring.
"""

from __future__ import annotations

import functools
import itertools
import logging
import time
from dataclasses import dataclass
from typing import Iterable, List, Mapping, Sequence, Tuple

from sympy.polys.groebnertools import groebner as _buchberger_groebner
from sympy.polys.orderings import grevlex

from degsdp.algebra.poly import MPoly, OrderKey, Scalar, VarContext
from degsdp.errors import ContextMismatchError

logger = logging.getLogger(__name__)

EMPTY = -1
"""Dimension reported for the unit ideal (empty zero set)."""

_AUX = "_w"


@dataclass(frozen=True)
class Ideal:
    """Ideal given by generators in a context."""

    ctx: VarContext
    generators: Tuple[MPoly, ...]

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ctx != self.ctx:
                raise ContextMismatchError(f"generator context {g.ctx.names} != {self.ctx.names}")
            if not g.is_zero:
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def of(cls, polys: Sequence[MPoly], ctx: VarContext = None) -> "Ideal":
        if ctx is None:
            if not polys:
                raise ValueError("cannot infer the context of an empty generator list")
            ctx = polys[0].ctx
        return cls(ctx, tuple(polys))

    @classmethod
    def unit(cls, ctx: VarContext) -> "Ideal":
        return cls(ctx, (ctx.one,))

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ctx != self.ctx:
            raise ContextMismatchError(f"ideal context {other.ctx.names} != {self.ctx.names}")
        return Ideal(self.ctx, self.generators + other.generators)

    def with_generators(self, *polys: MPoly) -> "Ideal":
        return Ideal(self.ctx, self.generators + tuple(polys))

    def coerce(self, ctx: VarContext) -> "Ideal":
        return Ideal(ctx, tuple(g.coerce(ctx) for g in self.generators))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis with respect to ``order``."""

    ctx: VarContext
    order: OrderKey
    polys: Tuple[MPoly, ...]

    @property
    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ctx, self.polys)

    def _ring_elements(self):
        ring = self.ctx.ring_for(self.order)
        return ring, [p.in_ring(ring) for p in self.polys]

    def leading_exponents(self) -> List[Tuple[int, ...]]:
        _, elems = self._ring_elements()
        return [e.LM for e in elems]

    def reduce(self, p: MPoly) -> MPoly:
        """Normal form of ``p`` modulo the basis."""
        if p.ctx != self.ctx:
            raise ContextMismatchError(f"context {p.ctx.names} != {self.ctx.names}")
        ring, elems = self._ring_elements()
        if not elems:
            return p
        r = p.in_ring(ring).rem(elems)
        return MPoly(self.ctx, r.set_ring(self.ctx.ring))

    def contains(self, p: MPoly) -> bool:
        return self.reduce(p).is_zero

    def same_ideal(self, other: "GroebnerBasis") -> bool:
        return self.ctx == other.ctx and frozenset(self.polys) == frozenset(other.polys)


# ------------------------------------------------------------------
# Groebner bases
# ------------------------------------------------------------------

@functools.lru_cache(maxsize=512)
def _cached_basis(ctx: VarContext, order: OrderKey, gens: Tuple[MPoly, ...]) -> Tuple[MPoly, ...]:
    ring = ctx.ring_for(order)
    seq = [g.in_ring(ring) for g in gens]
    started = time.monotonic()
    basis = _buchberger_groebner(seq, ring, method="buchberger")
    logger.debug(
        "groebner: %d generators in %d variables (%s) -> %d elements in %.3fs",
        len(seq), len(ctx), order, len(basis), time.monotonic() - started,
    )
    return tuple(MPoly(ctx, b.set_ring(ctx.ring)) for b in basis)


def groebner(ideal: Ideal, order: OrderKey = "grevlex") -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``order`` (deterministic)."""
    if not ideal.generators:
        return GroebnerBasis(ideal.ctx, order, ())
    polys = _cached_basis(ideal.ctx, order, ideal.generators)
    return GroebnerBasis(ideal.ctx, order, polys)


def contains(ideal: Ideal, p: MPoly) -> bool:
    return groebner(ideal).contains(p)


def is_unit(ideal: Ideal) -> bool:
    return groebner(ideal).is_unit


def same_ideal(a: Ideal, b: Ideal) -> bool:
    return groebner(a).same_ideal(groebner(b))


# ------------------------------------------------------------------
# Elimination and saturation
# ------------------------------------------------------------------

def eliminate(ideal: Ideal, names: Iterable[str]) -> Ideal:
    """Elimination ideal: generators free of ``names``, in the context of the remaining variables."""
    names = set(names)
    remove = tuple(n for n in ideal.ctx.names if n in names)
    keep = tuple(n for n in ideal.ctx.names if n not in names)
    if not remove:
        return ideal
    if not keep:
        raise ValueError("cannot eliminate every variable of the context")
    block = VarContext(remove + keep)
    lifted = Ideal(block, tuple(g.coerce(block) for g in ideal.generators))
    basis = groebner(lifted, ("elim", len(remove)))
    kept_ctx = VarContext(keep)
    out = [
        g.coerce(kept_ctx)
        for g in basis.polys
        if not any(v in names for v in g.variables())
    ]
    return Ideal(kept_ctx, tuple(out))


def _fresh(ctx: VarContext, base: str) -> str:
    name = base
    k = 0
    while name in ctx:
        k += 1
        name = f"{base}{k}"
    return name


def saturate(ideal: Ideal, h: MPoly) -> Ideal:
    """I : h^inf via an auxiliary variable w and the generator 1 - w*h."""
    if h.ctx != ideal.ctx:
        raise ContextMismatchError(f"context {h.ctx.names} != {ideal.ctx.names}")
    if h.is_zero:
        return Ideal.unit(ideal.ctx)
    if h.is_constant:
        return ideal
    w = _fresh(ideal.ctx, _AUX)
    big = VarContext((w,) + ideal.ctx.names)
    gens = [g.coerce(big) for g in ideal.generators]
    gens.append(big.one - big.gen(w) * h.coerce(big))
    result = eliminate(Ideal(big, tuple(gens)), [w])
    return Ideal(ideal.ctx, tuple(g.coerce(ideal.ctx) for g in result.generators))


def _leading_coefficient(g: MPoly, split: int, t: MPoly) -> MPoly:
    """Coefficient in k[t] of the leading monomial in the first ``split`` variables."""
    lead = max((e[:split] for e, _ in g.exponent_terms()), key=grevlex)
    lc = t.ctx.zero
    for e, c in g.exponent_terms():
        if e[:split] == lead:
            lc = lc + t ** e[split] * c
    return lc


def horizontal_part(ideal: Ideal, parameter: str) -> Ideal:
    """I : (k[parameter] \\ 0)^inf, the components not lying over finitely many parameter values."""
    if parameter not in ideal.ctx:
        raise ContextMismatchError(f"parameter {parameter!r} not among {list(ideal.ctx.names)}")
    others = tuple(n for n in ideal.ctx.names if n != parameter)
    block = VarContext(others + (parameter,))
    basis = groebner(ideal.coerce(block), ("elim", len(others)))
    if basis.is_unit:
        return Ideal.unit(ideal.ctx)
    t = block.gen(parameter)
    factors = []
    for g in basis.polys:
        if set(g.variables()) <= {parameter}:
            logger.debug("horizontal part: %s lies in k[%s]", g.to_text(), parameter)
            return Ideal.unit(ideal.ctx)
        lc = _leading_coefficient(g, len(others), t)
        if not lc.is_constant and lc not in factors:
            factors.append(lc)
    result = ideal
    for h in factors:
        result = saturate(result, h.coerce(ideal.ctx))
    return result


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """I ∩ J by eliminating s from s*I + (1-s)*J."""
    if a.ctx != b.ctx:
        raise ContextMismatchError(f"ideal context {a.ctx.names} != {b.ctx.names}")
    if not a.generators:
        return a
    if not b.generators:
        return b
    s = _fresh(a.ctx, "_s")
    big = VarContext((s,) + a.ctx.names)
    sv = big.gen(s)
    gens = [sv * g.coerce(big) for g in a.generators]
    gens += [(big.one - sv) * g.coerce(big) for g in b.generators]
    result = eliminate(Ideal(big, tuple(gens)), [s])
    return Ideal(a.ctx, tuple(g.coerce(a.ctx) for g in result.generators))


def product(a: Ideal, b: Ideal) -> Ideal:
    if a.ctx != b.ctx:
        raise ContextMismatchError(f"ideal context {a.ctx.names} != {b.ctx.names}")
    return Ideal(a.ctx, tuple(f * g for f in a.generators for g in b.generators))


def instantiate(ideal: Ideal, values: Mapping[str, Scalar]) -> Ideal:
    """Substitute rational values and drop the substituted variables from the context."""
    keep = tuple(n for n in ideal.ctx.names if n not in values)
    ctx = VarContext(keep)
    gens = tuple(g.substitute(values).coerce(ctx) for g in ideal.generators)
    return Ideal(ctx, gens)


# ------------------------------------------------------------------
# Dimension
# ------------------------------------------------------------------

def dimension_from_leading(lead: Sequence[Tuple[int, ...]], nvars: int) -> int:
    """Krull dimension of the monomial ideal generated by ``lead``."""
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            chosen = set(subset)
            independent = all(
                any(e and i not in chosen for i, e in enumerate(lm)) for lm in lead
            )
            if independent:
                return size
    return EMPTY


def dimension(ideal: Ideal) -> int:
    """Dimension of Z(I); EMPTY when the basis is {1}."""
    basis = groebner(ideal)
    if basis.is_unit:
        return EMPTY
    return dimension_from_leading(basis.leading_exponents(), len(ideal.ctx))
