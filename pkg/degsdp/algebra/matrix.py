"""Polynomial matrices: determinants, Jacobians, minors, characteristic polynomials."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from sympy import Matrix, Rational

from degsdp.algebra.poly import MPoly, Scalar, VarContext, ensure_same_context, to_rational
from degsdp.errors import ContextMismatchError, NonSquareMatrixError

logger = logging.getLogger(__name__)

# cofactor expansion up to this size, fraction-free elimination above
_EXPANSION_LIMIT = 4


@dataclass(frozen=True)
class PolyMatrix:
    """Dense matrix of MPoly entries sharing one context."""

    ctx: VarContext
    entries: Tuple[Tuple[MPoly, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged matrix")
            for entry in row:
                if entry.ctx != self.ctx:
                    raise ContextMismatchError(f"entry context {entry.ctx.names} != {self.ctx.names}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[MPoly]]) -> "PolyMatrix":
        flat = [e for row in rows for e in row]
        ctx = ensure_same_context(flat)
        return cls(ctx, tuple(tuple(r) for r in rows))

    @classmethod
    def from_rational(cls, ctx: VarContext, matrix) -> "PolyMatrix":
        """Constant matrix from a sympy Matrix or nested sequence of rationals."""
        if hasattr(matrix, "tolist"):
            matrix = matrix.tolist()
        return cls(ctx, tuple(tuple(ctx.const(v) for v in row) for row in matrix))

    @classmethod
    def identity(cls, ctx: VarContext, size: int) -> "PolyMatrix":
        return cls(ctx, tuple(
            tuple(ctx.one if i == j else ctx.zero for j in range(size)) for i in range(size)
        ))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: Tuple[int, int]) -> MPoly:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[MPoly, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[MPoly, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ctx, tuple(zip(*self.entries)))

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return PolyMatrix(self.ctx, tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)
        ))

    def scale(self, factor) -> "PolyMatrix":
        return PolyMatrix(self.ctx, tuple(tuple(e * factor for e in row) for row in self.entries))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = self.ctx.zero
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(self.ctx, tuple(out))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ctx, tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def substitute(self, mapping) -> "PolyMatrix":
        return PolyMatrix(self.ctx, tuple(tuple(e.substitute(mapping) for e in row) for row in self.entries))

    def evaluate(self, point) -> Matrix:
        return Matrix([[e.evaluate(point) for e in row] for row in self.entries])

    def flat(self) -> List[MPoly]:
        return [e for row in self.entries for e in row]


# ------------------------------------------------------------------
# Determinants
# ------------------------------------------------------------------

def _det_expansion(m: Sequence[Sequence[MPoly]], ctx: VarContext) -> MPoly:
    size = len(m)
    if size == 1:
        return m[0][0]
    if size == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ctx.zero
    for j in range(size):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det_expansion(minor, ctx)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(m: Sequence[Sequence[MPoly]], ctx: VarContext) -> MPoly:
    a = [list(row) for row in m]
    size = len(a)
    sign = 1
    prev = ctx.one
    for k in range(size - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, size) if a[i][k]), None)
            if swap is None:
                return ctx.zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exquo(prev)
        prev = a[k][k]
    det = a[size - 1][size - 1]
    return det if sign > 0 else -det


def determinant(matrix: PolyMatrix) -> MPoly:
    """Exact determinant of a square polynomial matrix."""
    if not matrix.is_square:
        raise NonSquareMatrixError(f"determinant of a {matrix.rows}x{matrix.cols} matrix")
    if matrix.rows <= _EXPANSION_LIMIT:
        return _det_expansion(matrix.entries, matrix.ctx)
    return _det_bareiss(matrix.entries, matrix.ctx)


def minors(matrix: PolyMatrix, k: int) -> List[MPoly]:
    """All k x k minors, rows and columns in lexicographic subset order."""
    if k < 1 or k > min(matrix.rows, matrix.cols):
        return []
    out = []
    for rows in itertools.combinations(range(matrix.rows), k):
        for cols in itertools.combinations(range(matrix.cols), k):
            out.append(determinant(matrix.submatrix(rows, cols)))
    return out


def maximal_minors(matrix: PolyMatrix) -> List[MPoly]:
    return minors(matrix, min(matrix.rows, matrix.cols))


def jacobian(polys: Sequence[MPoly], names: Sequence[str]) -> PolyMatrix:
    """Matrix of partial derivatives d polys[i] / d names[j]."""
    ctx = ensure_same_context(polys)
    for name in names:
        ctx.index(name)
    return PolyMatrix(ctx, tuple(tuple(p.diff(v) for v in names) for p in polys))


# ------------------------------------------------------------------
# Characteristic polynomial
# ------------------------------------------------------------------

def _berkowitz(a: Sequence[Sequence[MPoly]], ctx: VarContext) -> List[MPoly]:
    # coefficients of det(tI - A), highest power first
    size = len(a)
    if size == 0:
        return [ctx.one]
    corner = a[0][0]
    row = list(a[0][1:])
    col = [a[i][0] for i in range(1, size)]
    sub = [list(r[1:]) for r in a[1:]]

    toeplitz_col = [ctx.one, -corner]
    vec = col
    for _ in range(size - 1):
        dot = ctx.zero
        for r, v in zip(row, vec):
            if r and v:
                dot = dot + r * v
        toeplitz_col.append(-dot)
        vec = [
            sum((sub[i][k] * vec[k] for k in range(size - 1) if sub[i][k] and vec[k]), ctx.zero)
            for i in range(size - 1)
        ]

    inner = _berkowitz(sub, ctx)
    out = []
    for i in range(size + 1):
        acc = ctx.zero
        for j in range(size):
            if i - j < 0:
                break
            acc = acc + toeplitz_col[i - j] * inner[j]
        out.append(acc)
    return out


def char_poly(matrix: PolyMatrix) -> List[MPoly]:
    """Coefficients c_0..c_m of det(tI - M) = sum c_k t^k (division-free, c_m = 1)."""
    if not matrix.is_square:
        raise NonSquareMatrixError(f"characteristic polynomial of a {matrix.rows}x{matrix.cols} matrix")
    descending = _berkowitz(matrix.entries, matrix.ctx)
    return list(reversed(descending))


def principal_minor_sums(matrix: PolyMatrix) -> List[MPoly]:
    """E_k = sum of k x k principal minors, k = 0..m (E_0 = 1)."""
    if not matrix.is_square:
        raise NonSquareMatrixError("principal minors of a non-square matrix")
    size = matrix.rows
    sums = [matrix.ctx.one]
    for k in range(1, size + 1):
        acc = matrix.ctx.zero
        for idx in itertools.combinations(range(size), k):
            acc = acc + determinant(matrix.submatrix(idx, idx))
        sums.append(acc)
    return sums


def rational_char_poly(matrix: Sequence[Sequence[Scalar]]) -> List[Rational]:
    """char_poly of a constant rational matrix, as Rationals c_0..c_m."""
    rows = [[to_rational(v) for v in row] for row in matrix]
    ctx = VarContext(("_",))
    pm = PolyMatrix(ctx, tuple(tuple(ctx.const(v) for v in row) for row in rows))
    return [c.constant_value for c in char_poly(pm)]
