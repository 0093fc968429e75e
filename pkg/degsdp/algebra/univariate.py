"""Univariate helpers: gcd, squarefree part, resultant, sympy Poly bridging."""

from __future__ import annotations

from typing import Optional, Sequence

import sympy
from sympy import Poly, Symbol

from degsdp.algebra.matrix import rational_char_poly
from degsdp.algebra.poly import MPoly, VarContext
from degsdp.errors import ArityError, ContextMismatchError


def sole_variable(p: MPoly) -> Optional[str]:
    """Name of the only variable ``p`` uses, None for constants; ArityError otherwise."""
    used = p.variables()
    if len(used) > 1:
        raise ArityError(f"expected a univariate polynomial, got variables {list(used)}")
    return used[0] if used else None


def to_sympy_poly(p: MPoly, name: Optional[str] = None) -> Poly:
    """sympy Poly over QQ in ``name`` (default: the sole variable, or the first context name)."""
    var = name or sole_variable(p) or p.ctx.names[0]
    if any(v != var for v in p.variables()):
        raise ArityError(f"{p.to_text()} is not univariate in {var}")
    return Poly(p.as_expr(), Symbol(var), domain="QQ")


def from_sympy(expr, ctx: VarContext) -> MPoly:
    if isinstance(expr, Poly):
        expr = expr.as_expr()
    return MPoly(ctx, ctx.ring.from_expr(sympy.expand(expr)))


def _pair_variable(a: MPoly, b: MPoly) -> str:
    if a.ctx != b.ctx:
        raise ContextMismatchError(f"context {a.ctx.names} does not match {b.ctx.names}")
    va, vb = sole_variable(a), sole_variable(b)
    if va and vb and va != vb:
        raise ArityError(f"{va} and {vb} are different variables")
    return va or vb or a.ctx.names[0]


def poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Monic gcd of two univariate polynomials in the same variable."""
    var = _pair_variable(a, b)
    g = to_sympy_poly(a, var).gcd(to_sympy_poly(b, var))
    return from_sympy(g.monic() if not g.is_zero else g, a.ctx)


def squarefree_part(p: MPoly) -> MPoly:
    """Monic squarefree part of a univariate polynomial."""
    if p.is_zero or p.is_constant:
        return p.ctx.one if p else p
    return from_sympy(to_sympy_poly(p).sqf_part().monic(), p.ctx)


def resultant(a: MPoly, b: MPoly, name: Optional[str] = None) -> MPoly:
    """Resultant with respect to ``name``; for univariate input the result is a constant."""
    if a.ctx != b.ctx:
        raise ContextMismatchError(f"context {a.ctx.names} does not match {b.ctx.names}")
    var = name or _pair_variable(a, b)
    res = sympy.resultant(a.as_expr(), b.as_expr(), Symbol(var))
    return from_sympy(res, a.ctx)


def derivative(p: MPoly) -> MPoly:
    var = sole_variable(p)
    if var is None:
        return p.ctx.zero
    return p.diff(var)


def count_real_roots(p: MPoly, lo=None, hi=None) -> int:
    """Distinct real roots of a univariate polynomial in the closed interval [lo, hi]."""
    if p.is_zero:
        raise ValueError("the zero polynomial has infinitely many roots")
    if p.is_constant:
        return 0
    sp = to_sympy_poly(p).sqf_part()
    return int(sp.count_roots(lo, hi))


def univariate_tools(p: MPoly, other: Optional[MPoly] = None, matrix: Optional[Sequence[Sequence]] = None) -> dict:
    """Bundle of the univariate operations on ``p`` (and ``other`` when given)."""
    sole_variable(p)
    out = {"squarefree_part": squarefree_part(p)}
    if other is not None:
        out["gcd"] = poly_gcd(p, other)
        out["resultant"] = resultant(p, other)
    if matrix is not None:
        out["char_poly"] = rational_char_poly(matrix)
    return out
