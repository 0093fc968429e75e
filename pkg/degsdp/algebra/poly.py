"""
Sparse multivariate polynomials over QQ in a named variable context.

An MPoly wraps an element of a sympy ``PolyRing`` whose generators are the
context's names, stored under graded reverse lexicographic order. Other
monomial orders (lex, block elimination) are only materialised inside
Groebner computations; see ``VarContext.ring_for``.

Text format: ``3/4*x1^2*y_2_1 - x2 + 1``.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union
from tokenize import TokenError

from sympy import Rational, Symbol
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.orderings import ProductOrder, grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from degsdp.errors import ContextMismatchError, PolynomialSyntaxError

logger = logging.getLogger(__name__)

Monomial = Tuple[Tuple[str, int], ...]
Scalar = Union[int, Rational]
OrderKey = Union[str, Tuple[str, int]]

_TRANSFORMS = standard_transformations + (convert_xor,)


def to_rational(value) -> Rational:
    """Coerce an int, a ``"p/q"`` string, a sympy number or a QQ element to a Rational."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        try:
            result = Rational(text)
        except (TypeError, ValueError, SympifyError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
        if not isinstance(result, Rational):
            raise ValueError(f"malformed rational {value!r}")
        return result
    if QQ.of_type(value):
        return QQ.to_sympy(value)
    raise ValueError(f"not a rational: {value!r}")


def sign(value) -> int:
    """-1, 0 or 1 for a Python or sympy number."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def rational_text(value: Rational) -> str:
    value = to_rational(value)
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"


# ------------------------------------------------------------------
# Rings and orders
# ------------------------------------------------------------------

def _monomial_order(key: OrderKey):
    if key == "grevlex":
        return grevlex
    if key == "lex":
        return lex
    kind, split = key
    if kind != "elim":
        raise ValueError(f"unknown monomial order {key!r}")
    # first `split` variables form the eliminated block
    return ProductOrder(
        (grevlex, lambda m: m[:split]),
        (grevlex, lambda m: m[split:]),
    )


@functools.lru_cache(maxsize=None)
def _ring(names: Tuple[str, ...], key: OrderKey) -> PolyRing:
    return PolyRing(tuple(Symbol(n) for n in names), QQ, _monomial_order(key))


@dataclass(frozen=True)
class VarContext:
    """Ordered list of variable names shared by a family of polynomials."""

    names: Tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    @property
    def ring(self) -> PolyRing:
        return _ring(self.names, "grevlex")

    def ring_for(self, key: OrderKey) -> PolyRing:
        return _ring(self.names, key)

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ContextMismatchError(f"variable {name!r} not in context {self.names}") from None

    def gen(self, name: str) -> "MPoly":
        return MPoly(self, self.ring.gens[self.index(name)])

    def gens(self) -> Tuple["MPoly", ...]:
        return tuple(MPoly(self, g) for g in self.ring.gens)

    def const(self, value: Scalar) -> "MPoly":
        return MPoly(self, self.ring.ground_new(QQ.convert(to_rational(value))))

    @property
    def zero(self) -> "MPoly":
        return MPoly(self, self.ring.zero)

    @property
    def one(self) -> "MPoly":
        return MPoly(self, self.ring.one)

    def extend(self, *names: str) -> "VarContext":
        return VarContext(self.names + tuple(names))

    def poly(self, text: str) -> "MPoly":
        return parse_poly(text, self)


# ------------------------------------------------------------------
# Polynomials
# ------------------------------------------------------------------

class MPoly:
    """Immutable polynomial with rational coefficients in a VarContext."""

    __slots__ = ("ctx", "_p")

    def __init__(self, ctx: VarContext, element: PolyElement):
        self.ctx = ctx
        self._p = element

    @classmethod
    def from_exponents(cls, ctx: VarContext, terms: Mapping[Tuple[int, ...], Scalar]) -> "MPoly":
        data = {}
        for exps, coeff in terms.items():
            c = QQ.convert(to_rational(coeff))
            if c:
                data[tuple(int(e) for e in exps)] = c
        return cls(ctx, ctx.ring.from_dict(data))

    @classmethod
    def from_terms(cls, ctx: VarContext, terms: Mapping[Monomial, Scalar]) -> "MPoly":
        data: Dict[Tuple[int, ...], Rational] = {}
        for mono, coeff in terms.items():
            exps = [0] * len(ctx)
            for name, e in mono:
                exps[ctx.index(name)] += int(e)
            key = tuple(exps)
            data[key] = data.get(key, Rational(0)) + to_rational(coeff)
        return cls.from_exponents(ctx, data)

    @classmethod
    def _rebuild(cls, names: Tuple[str, ...], terms: List[Tuple[Tuple[int, ...], int, int]]) -> "MPoly":
        ctx = VarContext(names)
        return cls.from_exponents(ctx, {e: Rational(p, q) for e, p, q in terms})

    def __reduce__(self):
        terms = [(e, int(c.p), int(c.q)) for e, c in self.exponent_terms()]
        return (MPoly._rebuild, (self.ctx.names, terms))

    # -- element access ---------------------------------------------------

    @property
    def element(self) -> PolyElement:
        """The underlying sympy ring element. Do not mutate."""
        return self._p

    def in_ring(self, ring: PolyRing) -> PolyElement:
        return self._p.set_ring(ring)

    def exponent_terms(self) -> Iterator[Tuple[Tuple[int, ...], Rational]]:
        """(exponent vector, coefficient) pairs, grevlex-descending."""
        for exps, coeff in self._p.terms():
            yield exps, QQ.to_sympy(coeff)

    def terms(self) -> Dict[Monomial, Rational]:
        out: Dict[Monomial, Rational] = {}
        for exps, coeff in self.exponent_terms():
            mono = tuple((self.ctx.names[i], e) for i, e in enumerate(exps) if e)
            out[mono] = coeff
        return out

    # -- arithmetic -------------------------------------------------------

    def _other(self, other) -> PolyElement:
        if isinstance(other, MPoly):
            if other.ctx != self.ctx:
                raise ContextMismatchError(
                    f"context {other.ctx.names} does not match {self.ctx.names}"
                )
            return other._p
        try:
            value = to_rational(other)
        except ValueError:
            return NotImplemented
        return self.ctx.ring.ground_new(QQ.convert(value))

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return MPoly(self.ctx, self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return MPoly(self.ctx, self._p - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return MPoly(self.ctx, o - self._p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return MPoly(self.ctx, self._p * o)

    __rmul__ = __mul__

    def __neg__(self):
        return MPoly(self.ctx, -self._p)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        return MPoly(self.ctx, self._p ** exponent)

    def scale(self, factor: Scalar) -> "MPoly":
        return self * to_rational(factor)

    def exquo(self, other: "MPoly") -> "MPoly":
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        return MPoly(self.ctx, self._p.exquo(self._other(other)))

    def rem(self, divisors: Sequence["MPoly"]) -> "MPoly":
        return MPoly(self.ctx, self._p.rem([self._other(d) for d in divisors]))

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.ctx == other.ctx and self._p == other._p
        try:
            value = to_rational(other)
        except ValueError:
            return NotImplemented
        return self.is_constant and self.constant_value == value

    def __hash__(self) -> int:
        return hash((self.ctx.names, frozenset(self._p.items())))

    def __bool__(self) -> bool:
        return bool(self._p)

    # -- inspection -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._p

    @property
    def is_constant(self) -> bool:
        return self._p.is_ground

    @property
    def constant_value(self) -> Rational:
        """Coefficient of the constant monomial."""
        c = self._p.get(self.ctx.ring.zero_monom, QQ.zero)
        return QQ.to_sympy(c)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._p:
            return -1
        return max(sum(e) for e in self._p.keys())

    def degree(self, name: str) -> int:
        if not self._p:
            return -1
        i = self.ctx.index(name)
        return max(e[i] for e in self._p.keys())

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for exps in self._p.keys():
            used.update(i for i, e in enumerate(exps) if e)
        return tuple(self.ctx.names[i] for i in sorted(used))

    def group_degree(self, names: Iterable[str]) -> int:
        """Largest degree of a single monomial in the given block of variables."""
        idx = [self.ctx.index(n) for n in names]
        if not self._p:
            return -1
        return max(sum(exps[i] for i in idx) for exps in self._p.keys())

    def leading_coefficient(self) -> Rational:
        if not self._p:
            return Rational(0)
        return QQ.to_sympy(self._p.LC)

    # -- calculus and substitution ----------------------------------------

    def diff(self, name: str) -> "MPoly":
        return MPoly(self.ctx, self._p.diff(self.ctx.index(name)))

    def substitute(self, mapping: Mapping[str, Union["MPoly", Scalar]]) -> "MPoly":
        """Replace variables by polynomials (same context) or rationals."""
        repl: Dict[int, PolyElement] = {}
        for name, value in mapping.items():
            repl[self.ctx.index(name)] = self._other(value)
        if not repl:
            return self
        ring = self.ctx.ring
        powers: Dict[Tuple[int, int], PolyElement] = {}
        result = ring.zero
        for exps, coeff in self._p.iterterms():
            rest = list(exps)
            term = ring.one
            for i, g in repl.items():
                k = rest[i]
                if k:
                    rest[i] = 0
                    key = (i, k)
                    if key not in powers:
                        powers[key] = g ** k
                    term = term * powers[key]
            result += term.mul_term((tuple(rest), coeff))
        return MPoly(self.ctx, result)

    def evaluate(self, point: Mapping[str, Scalar]) -> Rational:
        """Full evaluation at a rational point; every used variable must be assigned."""
        missing = [n for n in self.variables() if n not in point]
        if missing:
            raise ContextMismatchError(f"no value for variables {missing}")
        values = {self.ctx.index(n): to_rational(v) for n, v in point.items() if n in self.ctx}
        total = Rational(0)
        for exps, coeff in self.exponent_terms():
            term = coeff
            for i, e in enumerate(exps):
                if e:
                    term *= values[i] ** e
            total += term
        return total

    def coerce(self, ctx: VarContext) -> "MPoly":
        """Re-express in another context by variable name."""
        if ctx == self.ctx:
            return self
        positions = []
        for i, name in enumerate(self.ctx.names):
            positions.append(ctx.names.index(name) if name in ctx.names else None)
        data = {}
        for exps, coeff in self._p.iterterms():
            new = [0] * len(ctx)
            for i, e in enumerate(exps):
                if not e:
                    continue
                j = positions[i]
                if j is None:
                    raise ContextMismatchError(
                        f"variable {self.ctx.names[i]!r} missing from target context {ctx.names}"
                    )
                new[j] = e
            data[tuple(new)] = coeff
        return MPoly(ctx, ctx.ring.from_dict(data))

    # -- normal forms -----------------------------------------------------

    def monic(self) -> "MPoly":
        if not self._p:
            return self
        return MPoly(self.ctx, self._p.monic())

    def normalize_integral(self) -> "MPoly":
        """Scale to integer coefficients with content 1 and positive leading coefficient."""
        if not self._p:
            return self
        coeffs = [QQ.to_sympy(c) for c in self._p.itercoeffs()]
        den = math.lcm(*(int(c.q) for c in coeffs))
        nums = [int(c * den) for c in coeffs]
        g = math.gcd(*nums)
        factor = Rational(den, g)
        if self.leading_coefficient() < 0:
            factor = -factor
        return self * factor

    # -- text ---------------------------------------------------------------

    def to_text(self) -> str:
        if not self._p:
            return "0"
        pieces = []
        for exps, coeff in self.exponent_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ctx.names, exps)
                if e
            )
            mag = abs(coeff)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{rational_text(mag)}*{mono}"
            else:
                body = rational_text(mag)
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def as_expr(self):
        return self._p.as_expr()

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MPoly({self.to_text()!r}, {list(self.ctx.names)})"


def parse_poly(text: str, ctx: VarContext) -> MPoly:
    """Parse the polynomial text format in ``ctx``."""
    local = {name: Symbol(name) for name in ctx.names}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS, evaluate=True)
        element = ctx.ring.from_expr(expr)
    except (SyntaxError, TypeError, ValueError, SympifyError, TokenError) as exc:
        raise PolynomialSyntaxError(f"cannot parse {text!r} in variables {list(ctx.names)}") from exc
    return MPoly(ctx, element)


def ensure_same_context(polys: Sequence[MPoly]) -> Optional[VarContext]:
    ctx = None
    for p in polys:
        if ctx is None:
            ctx = p.ctx
        elif p.ctx != ctx:
            raise ContextMismatchError(f"context {p.ctx.names} does not match {ctx.names}")
    return ctx


def poly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    """Exact ``a op b`` for op in add/sub/mul; contexts must agree."""
    if a.ctx != b.ctx:
        raise ContextMismatchError(f"context {a.ctx.names} does not match {b.ctx.names}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")
