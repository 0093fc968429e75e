"""
Real algebraic numbers: Sturm-sequence root isolation, exact sign
determination and comparison by interval refinement.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, Rational, Symbol

from degsdp.algebra.poly import MPoly, VarContext, rational_text, sign, to_rational
from degsdp.algebra.univariate import (
    count_real_roots,
    from_sympy,
    poly_gcd,
    sole_variable,
    squarefree_part,
    to_sympy_poly,
)
from degsdp.elimination.params import PARAM, ZeroDimParam
from degsdp.errors import ArityError

logger = logging.getLogger(__name__)

IsolatingInterval = Tuple[Rational, Rational]

V_CTX = VarContext(("v",))


def _variations(seq: Sequence[Poly], x: Rational) -> int:
    signs = [s for s in (sign(p.eval(x)) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _cauchy_bound(p: Poly) -> Rational:
    coeffs = [Rational(c) for c in p.all_coeffs()]
    lead = abs(coeffs[0])
    return 1 + max((abs(c) / lead for c in coeffs[1:]), default=Rational(0))


def isolate_real_roots(q: MPoly) -> List["AlgebraicNumber"]:
    """One AlgebraicNumber per real root of a squarefree univariate q, ascending."""
    if q.is_zero:
        raise ValueError("the zero polynomial has no isolating intervals")
    if q.is_constant:
        return []
    sp = to_sympy_poly(q)
    if sp.degree() > 0 and not sp.is_sqf:
        raise ValueError(f"{q.to_text()} is not squarefree")
    seq = sp.sturm()
    bound = _cauchy_bound(sp)
    monic = q.monic()
    rational = sorted(Rational(r) for r in sp.ground_roots())

    found: List[AlgebraicNumber] = []
    # (a, b, number of roots in (a, b])
    stack = [(-bound, bound, _variations(seq, -bound) - _variations(seq, bound))]
    while stack:
        a, b, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            exact = next((r for r in rational if a < r <= b), None)
            if exact is not None:
                found.append(AlgebraicNumber(monic, exact, exact))
                continue
            if sp.eval(a) != 0:
                found.append(AlgebraicNumber(monic, a, b))
                continue
        mid = (a + b) / 2
        left = _variations(seq, a) - _variations(seq, mid)
        stack.append((mid, b, count - left))
        stack.append((a, mid, left))
    found.sort(key=lambda r: (r.lo, r.hi))
    return found


@dataclass(frozen=True)
class AlgebraicNumber:
    """The unique root of ``poly`` in [lo, hi]; lo == hi for rational roots."""

    poly: MPoly
    lo: Rational
    hi: Rational

    @classmethod
    def rational(cls, value, ctx: VarContext = V_CTX) -> "AlgebraicNumber":
        value = to_rational(value)
        var = ctx.gen(ctx.names[0])
        return cls(var - value, value, value)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def interval(self) -> IsolatingInterval:
        return (self.lo, self.hi)

    @property
    def variable(self) -> str:
        return sole_variable(self.poly) or self.poly.ctx.names[0]

    def _at(self, x: Rational) -> Rational:
        return self.poly.evaluate({self.variable: x})

    def refine(self) -> "AlgebraicNumber":
        """Halve the isolating interval."""
        if self.is_exact:
            return self
        mid = (self.lo + self.hi) / 2
        at_mid = self._at(mid)
        if at_mid == 0:
            return AlgebraicNumber(self.poly, mid, mid)
        if sign(self._at(self.lo)) != sign(at_mid):
            return AlgebraicNumber(self.poly, self.lo, mid)
        return AlgebraicNumber(self.poly, mid, self.hi)

    def refine_to(self, width: Rational) -> "AlgebraicNumber":
        cur = self
        while not cur.is_exact and cur.hi - cur.lo > width:
            cur = cur.refine()
        return cur

    def sign_of(self, p: MPoly) -> int:
        return sign_at(p, self)

    def compare(self, other: "AlgebraicNumber") -> int:
        """-1, 0 or 1 as self <, =, > other (exact)."""
        if self.is_exact and other.is_exact:
            return sign(self.lo - other.lo)
        sym = Symbol("_z")
        pa = Poly(to_sympy_poly(self.poly).all_coeffs(), sym, domain="QQ")
        pb = Poly(to_sympy_poly(other.poly).all_coeffs(), sym, domain="QQ")
        g = pa.gcd(pb)
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo <= hi and g.degree() > 0 and g.count_roots(lo, hi) > 0:
            return 0
        a, b = self, other
        while True:
            if a.hi < b.lo:
                return -1
            if b.hi < a.lo:
                return 1
            if (a.hi - a.lo) >= (b.hi - b.lo):
                a = a.refine()
            else:
                b = b.refine()

    def approx(self, digits: int = 15) -> float:
        width = Rational(1, 10 ** (digits + 2)) * max(1, abs(self.lo), abs(self.hi))
        cur = self.refine_to(width)
        return float((cur.lo + cur.hi) / 2)

    def to_json(self) -> dict:
        return {
            "polynomial": self.poly.to_text(),
            "interval": [rational_text(self.lo), rational_text(self.hi)],
            "approx": self.approx(),
        }


def sign_at(p: MPoly, alpha: AlgebraicNumber) -> int:
    """Exact sign of p(alpha) for p univariate in alpha's variable."""
    if p.ctx != alpha.poly.ctx:
        p = p.coerce(alpha.poly.ctx)
    if p.is_constant:
        return sign(p.constant_value)
    var = alpha.variable
    if sole_variable(p) != var:
        raise ArityError(f"{p.to_text()} is not a polynomial in {var}")
    if alpha.is_exact:
        return sign(p.evaluate({var: alpha.lo}))
    g = poly_gcd(alpha.poly, p)
    if not g.is_constant and count_real_roots(g, alpha.lo, alpha.hi) > 0:
        return 0
    cur = alpha
    while count_real_roots(p, cur.lo, cur.hi) > 0:
        cur = cur.refine()
        if cur.is_exact:
            return sign(p.evaluate({var: cur.lo}))
    return sign(p.evaluate({var: cur.lo}))


def algebraic_value(num: MPoly, den: MPoly, alpha: AlgebraicNumber) -> AlgebraicNumber:
    """num(alpha) / den(alpha) as an AlgebraicNumber in the variable ``v``."""
    var = alpha.variable
    if alpha.is_exact:
        at = {var: alpha.lo}
        d = den.evaluate(at)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the algebraic number")
        return AlgebraicNumber.rational(num.evaluate(at) / d)
    den_sign = sign_at(den, alpha)
    if den_sign == 0:
        raise ZeroDivisionError("denominator vanishes at the algebraic number")
    num_t = num.coerce(alpha.poly.ctx)
    den_t = den.coerce(alpha.poly.ctx)

    if num_t.is_constant and den_t.is_constant:
        return AlgebraicNumber.rational(num_t.constant_value / den_t.constant_value)

    # factors shared by num, den and the minimal context would zero the resultant
    shared = poly_gcd(alpha.poly, poly_gcd(num_t, den_t))
    base = alpha.poly.exquo(shared) if not shared.is_constant else alpha.poly

    t, value = Symbol(var), Symbol("_value")
    res = sympy.resultant(base.as_expr(), den_t.as_expr() * value - num_t.as_expr(), t)
    res = res.subs(value, Symbol(V_CTX.names[0]))
    minimal = squarefree_part(from_sympy(res, V_CTX))
    for cand in isolate_real_roots(minimal):
        if cand.is_exact:
            if sign_at(num_t - den_t * cand.lo, alpha) == 0:
                return cand
            continue
        above_lo = sign_at(num_t - den_t * cand.lo, alpha) * den_sign
        below_hi = sign_at(num_t - den_t * cand.hi, alpha) * den_sign
        if above_lo > 0 and below_hi < 0:
            return cand
    raise ArithmeticError("value not located among the resultant's real roots")


# ------------------------------------------------------------------
# Points of a zero-dimensional parametrization
# ------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraicPoint:
    """A real point of Z(Q): the coordinates at one real root of q."""

    param: ZeroDimParam
    root: AlgebraicNumber

    @property
    def dimension(self) -> int:
        return len(self.param.ctx)

    def rational_coordinates(self) -> Optional[Tuple[Rational, ...]]:
        if not self.root.is_exact:
            return None
        at = {PARAM: self.root.lo}
        den = self.param.q0.evaluate(at)
        return tuple(c.evaluate(at) / den for c in self.param.coords)

    def coordinate(self, i: int) -> AlgebraicNumber:
        return algebraic_value(self.param.coords[i], self.param.q0, self.root)

    def sign_of(self, p: MPoly) -> int:
        """Exact sign of p at this point (p in the ambient context)."""
        num, d = self.param.numerator(p)
        s = sign_at(num, self.root)
        if d % 2 and s:
            s *= sign_at(self.param.q0, self.root)
        return s

    def value_of(self, p: MPoly) -> AlgebraicNumber:
        num, d = self.param.numerator(p)
        return algebraic_value(num, self.param.q0 ** d, self.root)

    def approx(self, digits: int = 15) -> Tuple[float, ...]:
        rational = self.rational_coordinates()
        if rational is not None:
            return tuple(float(c) for c in rational)
        return tuple(self.coordinate(i).approx(digits) for i in range(self.dimension))

    def to_json(self) -> dict:
        return {
            "coordinates": list(self.approx()),
            "root": self.root.to_json(),
        }


def real_points(param: ZeroDimParam) -> List[AlgebraicPoint]:
    if param.is_empty:
        return []
    return [AlgebraicPoint(param, root) for root in isolate_real_roots(param.q)]
