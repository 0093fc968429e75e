"""
Floating-point cross-check: grid search over a box plus SLSQP refinement.

Not a certificate. Feasibility is "smallest eigenvalue >= -1e-9"; a best
point on the box boundary after all expansions is reported as possibly
unbounded.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from degsdp.errors import OracleError
from degsdp.pencil.model import ObjectiveForm, SymmetricPencil

logger = logging.getLogger(__name__)

MAX_M = 4
MAX_N = 3
FEASIBILITY_TOL = 1e-9
DEFAULT_BOX = 10.0
EXPANSIONS = 3

# points per axis; the grid always contains the integers inside [-10, 10]
GRID_POINTS = {1: 1281, 2: 81, 3: 21}


@dataclass(frozen=True)
class OracleEstimate:
    value: Optional[float]
    point: Optional[Tuple[float, ...]]
    possibly_unbounded: bool
    box: float
    samples: int
    feasible_samples: int
    refined: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.value is not None and not self.possibly_unbounded

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "point": list(self.point) if self.point is not None else None,
            "possibly_unbounded": self.possibly_unbounded,
            "box": self.box,
            "samples": self.samples,
            "feasible_samples": self.feasible_samples,
            "refined": self.refined,
            "certified": False,
            "notes": list(self.notes),
        }


def _arrays(pencil: SymmetricPencil) -> np.ndarray:
    return np.array(
        [[[float(M[i, j]) for j in range(pencil.m)] for i in range(pencil.m)] for M in pencil.matrices]
    )


def _grid(n: int, radius: float) -> np.ndarray:
    axis = np.linspace(-radius, radius, GRID_POINTS[n])
    mesh = np.meshgrid(*([axis] * n), indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=1)


def min_eigenvalues(mats: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Smallest eigenvalue of A(x) for each row x of ``points``."""
    A = mats[0] + np.tensordot(points, mats[1:], axes=1)
    return np.linalg.eigvalsh(A)[:, 0]


def _refine(mats: np.ndarray, ell: np.ndarray, start: np.ndarray, radius: float) -> Optional[np.ndarray]:
    def constraint(x):
        return np.linalg.eigvalsh(mats[0] + np.tensordot(x, mats[1:], axes=1))[0]

    res = minimize(
        lambda x: float(ell @ x),
        start,
        jac=lambda x: ell,
        method="SLSQP",
        bounds=[(-radius, radius)] * len(start),
        constraints=[{"type": "ineq", "fun": constraint}],
        options={"maxiter": 200, "ftol": 1e-12},
    )
    if constraint(res.x) < -FEASIBILITY_TOL:
        logger.debug("refinement left the feasible set: %s", res.message)
        return None
    return res.x


def oracle_minimize(
    pencil: SymmetricPencil,
    objective: ObjectiveForm,
    box: float = DEFAULT_BOX,
    expansions: int = EXPANSIONS,
) -> OracleEstimate:
    """Approximate inf of the objective over {x : A(x) >= 0}."""
    if pencil.m > MAX_M or pencil.n > MAX_N:
        raise OracleError(f"oracle supports m <= {MAX_M}, n <= {MAX_N}; got m={pencil.m}, n={pencil.n}")
    if pencil.n < 1:
        raise OracleError("oracle needs at least one variable")
    if objective.n != pencil.n:
        raise OracleError(f"objective has {objective.n} coefficients, pencil has {pencil.n} variables")

    mats = _arrays(pencil)
    ell = np.array([float(c) for c in objective.coefficients])
    radius = float(box)
    best_x, best_v, samples, feasible_count, refined = None, None, 0, 0, False
    for attempt in range(expansions + 1):
        grid = _grid(pencil.n, radius)
        samples += len(grid)
        feasible = grid[min_eigenvalues(mats, grid) >= -FEASIBILITY_TOL]
        feasible_count += len(feasible)
        if not len(feasible):
            logger.info("oracle: no feasible sample in box %g", radius)
            radius *= 10
            continue

        values = feasible @ ell
        k = int(np.argmin(values))
        best_x, best_v = feasible[k], float(values[k])
        better = _refine(mats, ell, best_x, radius)
        refined = False
        if better is not None and float(ell @ better) < best_v:
            best_x, best_v, refined = better, float(ell @ better), True

        if np.max(np.abs(best_x)) < radius * (1 - 1e-6):
            return OracleEstimate(best_v, tuple(float(v) for v in best_x), False, radius, samples, feasible_count, refined)
        logger.info("oracle: best point on the boundary of box %g, expanding", radius)
        radius *= 10

    radius /= 10
    if best_x is None:
        return OracleEstimate(None, None, False, radius, samples, 0, notes=["no feasible sample"])
    return OracleEstimate(
        best_v, tuple(float(v) for v in best_x), True, radius, samples, feasible_count, refined,
        notes=["best point on the box boundary after every expansion"],
    )
