"""
Degenerate case A(x*) = 0: detection of a zero point and the decision
between a minimizer at x* and an objective unbounded below.

When A(x*) = 0 the spectrahedron is x* + cone{d : sum d_i A_i >= 0}; the
objective is unbounded below iff that cone meets l(d) = -1.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from degsdp.algebra.poly import rational_text, to_rational
from degsdp.errors import ZeroPointError
from degsdp.pencil.model import ObjectiveForm, SymmetricPencil
from degsdp.pencil.psd import psd_check

logger = logging.getLogger(__name__)


class ConeVerdict(Enum):
    MINIMIZER_AT_VERTEX = "minimizer_at_vertex"
    UNBOUNDED_BELOW = "unbounded_below"


@dataclass(frozen=True)
class ConeTestResult:
    verdict: ConeVerdict
    zero_point: Tuple[Rational, ...]
    sliced: Optional[SymmetricPencil]
    # the nearest-point feasibility decision is our own construction, not a certificate
    derived: bool = True

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "zero_point": [rational_text(c) for c in self.zero_point],
            "derived": self.derived,
        }


def detect_zero_point(pencil: SymmetricPencil) -> Optional[Tuple[Rational, ...]]:
    """A rational x* with A(x*) = 0, or None (free parameters of the solution set set to 0)."""
    m, n = pencil.m, pencil.n
    rows, rhs = [], []
    for i in range(m):
        for j in range(i, m):
            rows.append([pencil.matrices[k + 1][i, j] for k in range(n)])
            rhs.append(-pencil.matrices[0][i, j])
    if n == 0:
        return () if all(v == 0 for v in rhs) else None
    system = Matrix(rows)
    try:
        solution, params = system.gauss_jordan_solve(Matrix(rhs))
    except ValueError:
        return None
    if params.shape[0]:
        solution = solution.subs({p: 0 for p in params})
    point = tuple(to_rational(v) for v in solution)
    logger.info("zero point found: %s", [rational_text(v) for v in point])
    return point


def feasibility(pencil: SymmetricPencil, config=None) -> bool:
    """Whether S(A) is nonempty.

    Constant pencils are decided by the sign of A0 and a nonconstant 1x1
    pencil is a half-space; otherwise the nearest-point homotopy decides.
    """
    if pencil.n == 0 or all(M.is_zero_matrix for M in pencil.matrices[1:]):
        return psd_check(pencil, (0,) * pencil.n).is_psd
    if pencil.m == 1:
        return True
    if detect_zero_point(pencil) is not None:
        return True
    from degsdp.solver.homotopy import find_feasible_point

    return find_feasible_point(pencil, config) is not None


def cone_unboundedness_test(
    pencil: SymmetricPencil,
    zero_point: Sequence[Any],
    objective: ObjectiveForm,
    feasible: Callable[[SymmetricPencil], bool] = feasibility,
) -> ConeTestResult:
    """MinimizerAtVertex or UnboundedBelow at a zero point of the pencil."""
    point = tuple(to_rational(v) for v in zero_point)
    if any(pencil.at(point)):
        raise ZeroPointError(f"A(x) is not zero at {[rational_text(v) for v in point]}")
    if objective.is_zero:
        return ConeTestResult(ConeVerdict.MINIMIZER_AT_VERTEX, point, None)

    sliced = pencil.homogeneous().slice(objective)
    unbounded = feasible(sliced)
    verdict = ConeVerdict.UNBOUNDED_BELOW if unbounded else ConeVerdict.MINIMIZER_AT_VERTEX
    logger.info("cone test at %s: %s", [rational_text(v) for v in point], verdict.value)
    return ConeTestResult(verdict, point, sliced)
