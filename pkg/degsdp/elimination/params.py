"""
Rational parametrizations of finite sets and curves.

A ZeroDimParam encodes a finite set as x_i = q_i(t) / q0(t) over the roots of
a squarefree q(t), where t = λ·x is a separating linear form. A OneDimParam
does the same for a curve in (u, x) space with bivariate q(t, u), u being the
curve parameter (ε for homotopy curves), and keeps the elimination basis the
parametrization was derived from.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy import Poly, Rational, Symbol

from degsdp.algebra.poly import MPoly, VarContext, rational_text, to_rational
from degsdp.algebra.univariate import derivative, from_sympy, squarefree_part
from degsdp.elimination.ideal import EMPTY, Ideal, dimension, eliminate, groebner
from degsdp.errors import NotCurveError, NotZeroDimensionalError, SeparatingFormError

logger = logging.getLogger(__name__)

PARAM = "t"
T_CTX = VarContext((PARAM,))

# candidates of the form (1, k, k^2, ...) tried after the fixed prefix
_POWER_CANDIDATES = 40


# ------------------------------------------------------------------
# Separating forms
# ------------------------------------------------------------------

def separating_candidates(n: int) -> Iterator[Tuple[Rational, ...]]:
    """Deterministic sequence of small-integer linear forms in n variables."""
    seen = set()

    def fresh(vec):
        vec = tuple(Rational(v) for v in vec)
        if any(vec) and vec not in seen:
            seen.add(vec)
            return vec
        return None

    prefix: List[Sequence[int]] = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    prefix.append([1] * n)
    prefix.append(list(range(1, n + 1)))
    prefix.append([(i // 2 + 1) * (-1 if i % 2 else 1) for i in range(n)])
    for vec in prefix:
        cand = fresh(vec)
        if cand:
            yield cand
    for k in range(2, _POWER_CANDIDATES + 2):
        for sign in (1, -1):
            cand = fresh([(sign * k) ** i for i in range(n)])
            if cand:
                yield cand


def _linear_form(ctx: VarContext, names: Sequence[str], lam: Sequence[Rational]) -> MPoly:
    form = ctx.gen(PARAM)
    for name, c in zip(names, lam):
        if c:
            form = form - ctx.gen(name) * c
    return form


def homogenized_numerator(p: MPoly, images: Mapping[str, MPoly], q0: MPoly) -> Tuple[MPoly, int]:
    """Numerator N and degree d with p(images / q0) = N / q0^d.

    Variables of ``p`` not in ``images`` pass through by name into q0's context.
    """
    target = q0.ctx
    names = [n for n in images]
    d = max(p.group_degree(names), 0) if p else 0
    q0_pows = [target.one]
    for _ in range(d):
        q0_pows.append(q0_pows[-1] * q0)
    cache: Dict[Tuple[str, int], MPoly] = {}
    result = target.zero
    for exps, coeff in p.exponent_terms():
        term = target.const(coeff)
        used = 0
        for name, e in zip(p.ctx.names, exps):
            if not e:
                continue
            if name in images:
                key = (name, e)
                if key not in cache:
                    cache[key] = images[name] ** e
                term = term * cache[key]
                used += e
            else:
                term = term * target.gen(name) ** e
        result = result + term * q0_pows[d - used]
    return result, d


# ------------------------------------------------------------------
# Zero-dimensional parametrizations
# ------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroDimParam:
    """x_i = coords[i](t) / q0(t) where q(t) = 0; q = 1 encodes the empty set."""

    ctx: VarContext
    q: MPoly
    q0: MPoly
    coords: Tuple[MPoly, ...]
    separating_form: Tuple[Rational, ...]

    @classmethod
    def empty(cls, ctx: VarContext) -> "ZeroDimParam":
        return cls(
            ctx, T_CTX.one, T_CTX.one,
            tuple(T_CTX.zero for _ in ctx.names),
            tuple(Rational(0) for _ in ctx.names),
        )

    @classmethod
    def from_point(cls, ctx: VarContext, point: Sequence) -> "ZeroDimParam":
        """The single rational point, separated by the first coordinate."""
        values = [to_rational(v) for v in point]
        if len(values) != len(ctx):
            raise ValueError(f"point has {len(values)} coordinates, context has {len(ctx)}")
        if not values:
            raise ValueError("a point needs at least one coordinate")
        lam = (Rational(1),) + tuple(Rational(0) for _ in values[1:])
        q = T_CTX.gen(PARAM) - values[0]
        return cls(ctx, q, T_CTX.one, tuple(T_CTX.const(v) for v in values), lam)

    @property
    def is_empty(self) -> bool:
        return self.q.is_constant

    @property
    def degree(self) -> int:
        return max(self.q.total_degree(), 0)

    @property
    def images(self) -> Dict[str, MPoly]:
        return dict(zip(self.ctx.names, self.coords))

    def numerator(self, p: MPoly) -> Tuple[MPoly, int]:
        """(N mod q, d) such that p(x) = N(t) / q0(t)^d on the parametrized set."""
        num, d = homogenized_numerator(p.coerce(self.ctx), self.images, self.q0)
        if not self.is_empty:
            num = num.rem([self.q])
        return num, d

    def residual_ok(self, generators: Sequence[MPoly]) -> bool:
        """Every generator vanishes identically on the parametrization (exact)."""
        if self.is_empty:
            return True
        return all(self.numerator(g)[0].is_zero for g in generators)

    def contains(self, point) -> bool:
        """Whether a rational point (mapping or sequence in context order) lies in Z(Q)."""
        if isinstance(point, Mapping):
            values = [to_rational(point[n]) for n in self.ctx.names]
        else:
            values = [to_rational(v) for v in point]
        if self.is_empty:
            return False
        t0 = sum((c * v for c, v in zip(self.separating_form, values)), Rational(0))
        at = {PARAM: t0}
        if self.q.evaluate(at) != 0:
            return False
        den = self.q0.evaluate(at)
        return all(den * v == c.evaluate(at) for v, c in zip(values, self.coords))

    def to_ideal(self) -> Ideal:
        """The radical ideal of the parametrized set, in the ambient context."""
        if self.is_empty:
            return Ideal.unit(self.ctx)
        joint = self.ctx.extend(PARAM)
        gens = [self.q.coerce(joint)]
        for name, c in zip(self.ctx.names, self.coords):
            gens.append(self.q0.coerce(joint) * joint.gen(name) - c.coerce(joint))
        return eliminate(Ideal(joint, tuple(gens)), [PARAM]).coerce(self.ctx)

    def to_json(self) -> dict:
        return {
            "variables": list(self.ctx.names),
            "separating_form": [rational_text(c) for c in self.separating_form],
            "q": self.q.to_text(),
            "q0": self.q0.to_text(),
            "coordinates": [c.to_text() for c in self.coords],
            "degree": self.degree,
        }


def radical_zero_dim(ideal: Ideal) -> Ideal:
    """Add the squarefree parts of the univariate eliminants (finite sets only)."""
    extra = []
    for name in ideal.ctx.names:
        others = [n for n in ideal.ctx.names if n != name]
        elim = eliminate(ideal, others) if others else ideal
        basis = groebner(elim).polys
        uni = [b for b in basis if b.variables() in ((name,), ())]
        if not uni:
            continue
        p = uni[0]
        s = squarefree_part(p)
        if s != p.monic():
            extra.append(s.coerce(ideal.ctx))
    return ideal.with_generators(*extra) if extra else ideal


def _shape_form(basis, names: Sequence[str], joint: VarContext) -> Optional[Tuple[MPoly, Dict[str, MPoly]]]:
    polys = basis.polys
    if len(polys) != len(names) + 1:
        return None
    tail = [p for p in polys if p.variables() == (PARAM,)]
    if len(tail) != 1:
        return None
    images: Dict[str, MPoly] = {}
    for name in names:
        found = [
            p for p in polys
            if name in p.variables() and set(p.variables()) <= {name, PARAM}
        ]
        if len(found) != 1 or found[0].diff(name) != 1:
            return None
        images[name] = (joint.gen(name) - found[0]).coerce(T_CTX)
    return tail[0].coerce(T_CTX), images


def zero_dim_param(ideal: Ideal) -> ZeroDimParam:
    """Shape-lemma parametrization of the radical of a zero-dimensional ideal."""
    ctx = ideal.ctx
    if groebner(ideal).is_unit:
        return ZeroDimParam.empty(ctx)
    dim = dimension(ideal)
    if dim != 0:
        raise NotZeroDimensionalError(f"ideal in {list(ctx.names)} has dimension {dim}")
    if PARAM in ctx:
        raise ValueError(f"variable name {PARAM!r} is reserved for the separating form")

    rad = radical_zero_dim(ideal)
    joint = ctx.extend(PARAM)
    base = [g.coerce(joint) for g in rad.generators]
    for lam in separating_candidates(len(ctx)):
        lin = _linear_form(joint, ctx.names, lam)
        lex_basis = groebner(Ideal(joint, tuple(base) + (lin,)), "lex")
        shape = _shape_form(lex_basis, ctx.names, joint)
        if shape is None:
            logger.debug("separating form %s rejected", [rational_text(c) for c in lam])
            continue
        q, images = shape
        q0 = derivative(q)
        coords = tuple((images[n] * q0).rem([q]) for n in ctx.names)
        logger.debug("parametrized %d points with form %s", q.total_degree(), [rational_text(c) for c in lam])
        return ZeroDimParam(ctx, q, q0, coords, lam)
    raise SeparatingFormError(f"no separating form found for ideal in {list(ctx.names)}")


# ------------------------------------------------------------------
# Curves
# ------------------------------------------------------------------

def _sympy(p: MPoly) -> Poly:
    return Poly(p.as_expr(), *[Symbol(n) for n in p.ctx.names], domain="QQ")


def _mgcd(polys: Sequence[MPoly]) -> MPoly:
    ctx = polys[0].ctx
    g = _sympy(polys[0])
    for p in polys[1:]:
        g = g.gcd(_sympy(p))
    return from_sympy(g, ctx)


def _mlcm(polys: Sequence[MPoly]) -> MPoly:
    ctx = polys[0].ctx
    out = _sympy(polys[0])
    for p in polys[1:]:
        out = out.lcm(_sympy(p))
    return from_sympy(out, ctx)


def _msqf(p: MPoly) -> MPoly:
    return from_sympy(_sympy(p).sqf_part(), p.ctx)


@dataclass(frozen=True)
class OneDimParam:
    """Curve in (u, x): x_i = coords[i](t, u) / q0(t, u) on q(t, u) = 0.

    ``basis`` is the grevlex basis of the projected curve ideal in ``ctx``;
    ``coords`` is empty when no separating form gave rational coordinates.
    """

    ctx: VarContext
    parameter: str
    basis: Tuple[MPoly, ...]
    q: MPoly
    q0: MPoly
    coords: Tuple[MPoly, ...] = ()
    separating_form: Tuple[Rational, ...] = ()

    @classmethod
    def empty(cls, ctx: VarContext, parameter: str) -> "OneDimParam":
        tu = VarContext((PARAM, parameter))
        return cls(ctx, parameter, (ctx.one,), tu.one, tu.one)

    @property
    def is_empty(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant

    @property
    def kept(self) -> Tuple[str, ...]:
        return tuple(n for n in self.ctx.names if n != self.parameter)

    @property
    def shaped(self) -> bool:
        return bool(self.coords)

    @property
    def degree(self) -> int:
        """Degree of the plane curve q(t, u) = 0."""
        return max(self.q.total_degree(), 0)

    @property
    def basis_degree(self) -> int:
        return max((b.total_degree() for b in self.basis), default=0)

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ctx, self.basis)

    def residual_ok(self) -> bool:
        if self.is_empty or not self.shaped:
            return self.is_empty
        images = dict(zip(self.kept, self.coords))
        for b in self.basis:
            num, _ = homogenized_numerator(b, images, self.q0)
            if not num.rem([self.q]).is_zero:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "variables": list(self.ctx.names),
            "parameter": self.parameter,
            "separating_form": [rational_text(c) for c in self.separating_form],
            "q": self.q.to_text(),
            "q0": self.q0.to_text(),
            "coordinates": [c.to_text() for c in self.coords],
            "basis": [b.to_text() for b in self.basis],
            "degree": self.degree,
        }


def _curve_polynomial(lifted: Ideal, xs: Sequence[str], tu: VarContext) -> Optional[MPoly]:
    elim = eliminate(lifted, xs)
    gens = [g.coerce(tu) for g in elim.generators]
    if not gens:
        return None
    q = _msqf(_mgcd(gens))
    if q.is_constant:
        return None
    return q.normalize_integral()


def _curve_coordinates(lifted: Ideal, xs: Sequence[str], tu: VarContext, q: MPoly):
    numerators, denominators = [], []
    for name in xs:
        others = [n for n in xs if n != name]
        elim = eliminate(lifted, others) if others else lifted
        best = None
        for g in sorted(elim.generators, key=lambda p: p.total_degree()):
            if g.degree(name) != 1:
                continue
            a = g.diff(name).coerce(tu)
            if not _mgcd([a, q]).is_constant:
                continue
            b = (-g.substitute({name: 0})).coerce(tu)
            best = (a, b)
            break
        if best is None:
            return None
        denominators.append(best[0])
        numerators.append(best[1])
    q0 = _mlcm(denominators).normalize_integral()
    coords = tuple(b * q0.exquo(a) for a, b in zip(denominators, numerators))
    return q0, coords


def one_dim_param(ideal: Ideal, keep: Sequence[str], parameter: str = "eps") -> OneDimParam:
    """Project a curve onto (parameter, keep) and parametrize the closure of the projection."""
    ctx = ideal.ctx
    keep = tuple(n for n in keep if n != parameter)
    if parameter not in ctx:
        raise NotCurveError(f"parameter {parameter!r} not among {list(ctx.names)}")
    kept_ctx = VarContext((parameter,) + keep)

    dim = dimension(ideal)
    if dim == EMPTY:
        return OneDimParam.empty(kept_ctx, parameter)
    if dim != 1:
        raise NotCurveError(f"ideal in {list(ctx.names)} has dimension {dim}, expected 1")

    drop = [n for n in ctx.names if n != parameter and n not in keep]
    projected = eliminate(ideal, drop).coerce(kept_ctx)
    basis = groebner(projected).polys
    if len(basis) == 1 and basis[0].is_constant:
        return OneDimParam.empty(kept_ctx, parameter)

    tu = VarContext((PARAM, parameter))
    joint = VarContext(keep + (PARAM, parameter))
    fallback = None
    for lam in itertools.islice(separating_candidates(len(keep)), 12):
        lin = _linear_form(joint, keep, lam)
        lifted = Ideal(joint, tuple(b.coerce(joint) for b in basis) + (lin,))
        q = _curve_polynomial(lifted, keep, tu)
        if q is None:
            continue
        if fallback is None:
            fallback = (q, lam)
        found = _curve_coordinates(lifted, keep, tu, q)
        if found is None:
            logger.debug("curve form %s gives no rational coordinates", [rational_text(c) for c in lam])
            continue
        q0, coords = found
        return OneDimParam(kept_ctx, parameter, basis, q, q0, coords, lam)

    logger.warning("curve in %s: no separating form with rational coordinates", list(kept_ctx.names))
    if fallback is None:
        return OneDimParam(kept_ctx, parameter, basis, tu.one, tu.one)
    q, lam = fallback
    return OneDimParam(kept_ctx, parameter, basis, q, tu.one, (), lam)
