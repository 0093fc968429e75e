"""
SDP instances: the symmetric pencil A(x) = A0 + x1*A1 + ... + xn*An, the
linear objective, and the positive definite perturbation B.

Instance document (JSON)::

    {"m": 2, "n": 2,
     "matrices": [[["1","-1"],["-1","-1"]], ...],   # A0 first
     "objective": ["88", "-94"]}

Rationals are strings ("p/q") or integers.
"""

import json
import logging
from dataclasses import dataclass
from typing import Any, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import ImmutableMatrix, Matrix, Rational, zeros

from degsdp.algebra.matrix import PolyMatrix
from degsdp.algebra.poly import MPoly, VarContext, rational_text, to_rational
from degsdp.errors import InstanceError
from degsdp.pencil.psd import matrix_certificate

logger = logging.getLogger(__name__)

EPS = "eps"

# integer range of the random factor M in B = M^T M + I
PERTURBATION_RANGE = 10


def x_names(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))


def _immutable(rows: Sequence[Sequence[Any]]) -> ImmutableMatrix:
    return ImmutableMatrix([[to_rational(v) for v in row] for row in rows])


# ------------------------------------------------------------------
# Domain types
# ------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetricPencil:
    """A0 + x1*A1 + ... + xn*An with exact rational symmetric m x m matrices."""

    m: int
    n: int
    matrices: Tuple[ImmutableMatrix, ...]

    def __post_init__(self):
        mats = tuple(ImmutableMatrix(M) for M in self.matrices)
        if len(mats) != self.n + 1:
            raise InstanceError(f"expected {self.n + 1} matrices, got {len(mats)}", "matrices")
        for k, M in enumerate(mats):
            if M.shape != (self.m, self.m):
                raise InstanceError(f"shape {M.shape} != ({self.m}, {self.m})", f"matrices[{k}]")
            if M != M.T:
                raise InstanceError("matrix is not symmetric", f"matrices[{k}]")
        object.__setattr__(self, "matrices", mats)

    @classmethod
    def from_rows(cls, matrices: Sequence[Sequence[Sequence[Any]]]) -> "SymmetricPencil":
        mats = [_immutable(M) for M in matrices]
        if not mats:
            raise InstanceError("at least A0 is required", "matrices")
        return cls(mats[0].shape[0], len(mats) - 1, tuple(mats))

    @classmethod
    def identity(cls, m: int) -> "SymmetricPencil":
        return cls(m, 0, (ImmutableMatrix.eye(m),))

    @property
    def variables(self) -> Tuple[str, ...]:
        return x_names(self.n)

    @property
    def constant(self) -> ImmutableMatrix:
        return self.matrices[0]

    def at(self, point: Sequence[Any]) -> Matrix:
        """A(x) at a rational point."""
        values = [to_rational(v) for v in point]
        if len(values) != self.n:
            raise InstanceError(f"point has {len(values)} coordinates, pencil has {self.n}", "point")
        total = Matrix(self.matrices[0])
        for v, M in zip(values, self.matrices[1:]):
            if v:
                total += v * M
        return total

    def poly_matrix(self, ctx: VarContext, perturbation: Optional[ImmutableMatrix] = None) -> PolyMatrix:
        """A(x) (+ eps*B) as a polynomial matrix; ctx must contain x1..xn (and eps)."""
        entries = []
        gens = [ctx.gen(name) for name in self.variables]
        eps = ctx.gen(EPS) if perturbation is not None else None
        for i in range(self.m):
            row = []
            for j in range(self.m):
                e = ctx.const(self.matrices[0][i, j])
                for g, M in zip(gens, self.matrices[1:]):
                    if M[i, j]:
                        e = e + g * M[i, j]
                if perturbation is not None and perturbation[i, j]:
                    e = e + eps * perturbation[i, j]
                row.append(e)
            entries.append(tuple(row))
        return PolyMatrix(ctx, tuple(entries))

    def perturbed(self, perturbation: ImmutableMatrix, eps_value: Any) -> "SymmetricPencil":
        """The pencil A + eps_value*B with eps instantiated."""
        shifted = self.matrices[0] + to_rational(eps_value) * ImmutableMatrix(perturbation)
        return SymmetricPencil(self.m, self.n, (shifted,) + self.matrices[1:])

    def homogeneous(self) -> "SymmetricPencil":
        return SymmetricPencil(self.m, self.n, (ImmutableMatrix(zeros(self.m, self.m)),) + self.matrices[1:])

    def slice(self, objective: "ObjectiveForm") -> "SymmetricPencil":
        """Homogeneous pencil restricted to objective(d) = -1, one variable substituted away."""
        j = objective.pivot()
        if j is None:
            raise ValueError("cannot slice with the zero objective")
        lj = objective.coefficients[j]
        Aj = self.matrices[j + 1]
        rest = []
        for i in range(self.n):
            if i == j:
                continue
            rest.append(self.matrices[i + 1] - (objective.coefficients[i] / lj) * Aj)
        return SymmetricPencil(self.m, self.n - 1, (-Aj / lj,) + tuple(rest))

    def to_document(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "matrices": [[[rational_text(M[i, j]) for j in range(self.m)] for i in range(self.m)] for M in self.matrices],
        }


@dataclass(frozen=True)
class ObjectiveForm:
    """l(x) = l1*x1 + ... + ln*xn."""

    coefficients: Tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(to_rational(c) for c in self.coefficients))

    @property
    def n(self) -> int:
        return len(self.coefficients)

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def pivot(self) -> Optional[int]:
        """Index of the first nonzero coefficient."""
        return next((i for i, c in enumerate(self.coefficients) if c), None)

    def value(self, point: Sequence[Any]) -> Rational:
        return sum((c * to_rational(v) for c, v in zip(self.coefficients, point)), Rational(0))

    def as_poly(self, ctx: VarContext) -> MPoly:
        total = ctx.zero
        for name, c in zip(x_names(self.n), self.coefficients):
            if c:
                total = total + ctx.gen(name) * c
        return total

    def gradient(self, ctx: VarContext) -> List[MPoly]:
        return [ctx.const(c) for c in self.coefficients]

    def perturbed(self, delta: Any) -> "ObjectiveForm":
        """l + delta*(1, 2, ..., n)."""
        d = to_rational(delta)
        return ObjectiveForm(tuple(c + d * (k + 1) for k, c in enumerate(self.coefficients)))

    def to_document(self) -> List[str]:
        return [rational_text(c) for c in self.coefficients]


# generic center for the nearest-point objective; coordinates beyond the table wrap
CENTER = tuple(Rational(p, q) for p, q in ((3, 7), (-5, 11), (7, 13), (-2, 17), (11, 19), (-13, 23), (5, 29), (-17, 31)))


@dataclass(frozen=True)
class DistanceObjective:
    """Half the squared distance to ``center``; its critical points locate the nearest point."""

    center: Tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(to_rational(c) for c in self.center))

    @classmethod
    def generic(cls, n: int) -> "DistanceObjective":
        return cls(tuple(CENTER[k % len(CENTER)] * (1 + k // len(CENTER)) for k in range(n)))

    @property
    def n(self) -> int:
        return len(self.center)

    @property
    def is_zero(self) -> bool:
        return False

    def gradient(self, ctx: VarContext) -> List[MPoly]:
        return [ctx.gen(name) - c for name, c in zip(x_names(self.n), self.center)]

    def to_document(self) -> dict:
        return {"center": [rational_text(c) for c in self.center]}


@dataclass(frozen=True)
class PerturbationMatrix:
    """Positive definite B; ``seed`` is None for an explicit matrix."""

    matrix: ImmutableMatrix
    seed: Optional[int] = None

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    def to_document(self) -> dict:
        doc = {"B": [[rational_text(self.matrix[i, j]) for j in range(self.m)] for i in range(self.m)]}
        if self.seed is not None:
            doc["seed"] = self.seed
        return doc


# ------------------------------------------------------------------
# Documents
# ------------------------------------------------------------------

def _load(document: Union[str, bytes, Mapping[str, Any]]) -> Mapping[str, Any]:
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise InstanceError("instance document must be a JSON object")
    return document


def _rational_at(value: Any, field: str) -> Rational:
    try:
        return to_rational(value)
    except ValueError as exc:
        raise InstanceError(str(exc), field) from None


def _square(rows: Any, m: int, field: str) -> ImmutableMatrix:
    if not isinstance(rows, list) or len(rows) != m:
        raise InstanceError(f"expected {m} rows", field)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise InstanceError(f"expected {m} entries", f"{field}[{i}]")
        out.append([_rational_at(v, f"{field}[{i}][{j}]") for j, v in enumerate(row)])
    M = ImmutableMatrix(out)
    for i in range(m):
        for j in range(i + 1, m):
            if M[i, j] != M[j, i]:
                raise InstanceError(
                    f"not symmetric: [{i}][{j}]={rational_text(M[i, j])} but [{j}][{i}]={rational_text(M[j, i])}",
                    field,
                )
    return M


def parse_instance(document) -> Tuple[SymmetricPencil, ObjectiveForm]:
    """Validate an instance document (mapping or JSON text)."""
    doc = _load(document)
    for key in ("m", "n", "matrices", "objective"):
        if key not in doc:
            raise InstanceError("missing field", key)
    m, n = doc["m"], doc["n"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise InstanceError("must be a positive integer", "m")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InstanceError("must be a non-negative integer", "n")
    matrices = doc["matrices"]
    if not isinstance(matrices, list) or len(matrices) != n + 1:
        raise InstanceError(f"expected n+1 = {n + 1} matrices", "matrices")
    mats = tuple(_square(M, m, f"matrices[{k}]") for k, M in enumerate(matrices))
    objective = doc["objective"]
    if not isinstance(objective, list) or len(objective) != n:
        raise InstanceError(f"expected n = {n} coefficients", "objective")
    coeffs = tuple(_rational_at(c, f"objective[{k}]") for k, c in enumerate(objective))
    pencil = SymmetricPencil(m, n, mats)
    logger.debug("parsed instance m=%d n=%d", m, n)
    return pencil, ObjectiveForm(coeffs)


def serialize_instance(pencil: SymmetricPencil, objective: ObjectiveForm) -> dict:
    doc = pencil.to_document()
    doc["objective"] = objective.to_document()
    return doc


def parse_matrix_document(document, m: int) -> PerturbationMatrix:
    """Explicit perturbation: ``{"B": rows}`` or bare rows; must be positive definite."""
    doc = document
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"invalid JSON: {exc}") from exc
    field = "B"
    if isinstance(doc, Mapping):
        if "B" not in doc:
            raise InstanceError("missing field", "B")
        doc = doc["B"]
    B = _square(doc, m, field)
    if not matrix_certificate(B).is_pd:
        raise InstanceError("perturbation must be positive definite", field)
    return PerturbationMatrix(B, None)


# ------------------------------------------------------------------
# Perturbation sampling
# ------------------------------------------------------------------

def sample_perturbation(m: int, seed: int) -> PerturbationMatrix:
    """B = M^T M + I with M an integer matrix, entries in [-10, 10], drawn from ``seed``."""
    if m < 1:
        raise ValueError("m must be positive")
    rng = np.random.default_rng(seed)
    M = rng.integers(-PERTURBATION_RANGE, PERTURBATION_RANGE + 1, size=(m, m))
    B = M.T @ M + np.eye(m, dtype=M.dtype)
    matrix = ImmutableMatrix([[int(B[i, j]) for j in range(m)] for i in range(m)])
    logger.debug("sampled perturbation with seed %d", seed)
    return PerturbationMatrix(matrix, seed)
