"""
The 2x2 degenerate example: a pencil whose spectrahedron is the single point
p where A(p) = 0, its singular incidence variety, the homotopy quadric of the
rank-1 stratum and the recovered minimizer; plus the B = I variant whose
perturbed incidence variety is singular only at eps = 0.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Rational

from degsdp.algebra.poly import MPoly, rational_text
from degsdp.elimination.ideal import Ideal, eliminate, groebner
from degsdp.pencil.model import EPS, ObjectiveForm, PerturbationMatrix, SymmetricPencil
from degsdp.solver.homotopy import degenerate_sdp
from degsdp.solver.report import SolveConfig, SolveReport
from degsdp.solver.steps import odp
from degsdp.systems.incidence import build_incidence, regularity_check
from degsdp.systems.lagrange import build_lagrange, dump_system

logger = logging.getLogger(__name__)

EXAMPLE_PERTURBATION = ((80, -68), (-68, 109))
EXAMPLE_OBJECTIVE = (88, -94)
IDENTITY_EPS = (Rational(0), Rational(1), Rational(1, 2), Rational(1, 7))


def example_pencil(p: Sequence = (1, 1)) -> SymmetricPencil:
    """[[p1 - x1, x2 - p2], [x2 - p2, x1 - p1]]; the spectrahedron is {p}."""
    p1, p2 = (Rational(v) for v in p)
    return SymmetricPencil.from_rows([
        [[p1, -p2], [-p2, -p1]],
        [[-1, 0], [0, 1]],
        [[0, 1], [1, 0]],
    ])


def example_objective() -> ObjectiveForm:
    return ObjectiveForm(EXAMPLE_OBJECTIVE)


def example_perturbation() -> PerturbationMatrix:
    return PerturbationMatrix(ImmutableMatrix(EXAMPLE_PERTURBATION))


def singular_points(pencil: SymmetricPencil, rank: int = 1, iota: Tuple[int, ...] = (1,)) -> Tuple[Ideal, Ideal]:
    """Singular locus of the unperturbed incidence variety and its projection to x."""
    inc = build_incidence(pencil, None, rank, iota)
    result = regularity_check(inc)
    locus = result.witness.ideal if result.witness is not None else Ideal.unit(inc.ctx)
    return locus, eliminate(locus, inc.y_names)


def homotopy_quadric(
    pencil: SymmetricPencil,
    perturbation: PerturbationMatrix,
    objective: ObjectiveForm,
    rank: int = 1,
    iota: Tuple[int, ...] = (1,),
) -> Optional[MPoly]:
    """Defining polynomial in x of the stratum's homotopy curve, integral and primitive."""
    L = build_lagrange(build_incidence(pencil, perturbation.matrix, rank, iota), objective)
    curve = odp(L)
    if curve.is_empty:
        return None
    plane = groebner(eliminate(curve.ideal, [EPS])).polys
    if len(plane) != 1:
        logger.warning("projected curve is not a hypersurface: %d generators", len(plane))
        return None
    return plane[0].normalize_integral()


def identity_regularity(p: Sequence = (0, 0)) -> List[Tuple[Rational, bool]]:
    inc = build_incidence(example_pencil(p), ImmutableMatrix.eye(2), 1, (1,))
    return [(eps, regularity_check(inc, eps).is_regular) for eps in IDENTITY_EPS]


def _identity_lines() -> List[str]:
    inc = build_incidence(example_pencil((0, 0)), ImmutableMatrix.eye(2), 1, (1,))
    lines = ["== B = I variant at p = (0, 0) ==", "perturbed incidence equations:"]
    lines.append(dump_system(inc).rstrip())
    checks = identity_regularity((0, 0))
    for eps, regular in checks:
        lines.append(f"  eps = {rational_text(eps)}: {'regular' if regular else 'singular'}")
    if all(regular == (eps != 0) for eps, regular in checks):
        lines.append("singular iff eps = 0")
    return lines


def _example_lines(config: SolveConfig) -> Tuple[List[str], SolveReport]:
    pencil = example_pencil()
    B = example_perturbation()
    ell = example_objective()
    lines = ["== degenerate 2x2 example, p = (1, 1) ==", "unperturbed incidence equations (r=1, iota=[1]):"]
    lines.append(dump_system(build_incidence(pencil, None, 1, (1,))).rstrip())

    locus, projected = singular_points(pencil)
    lines.append("singular locus: " + ", ".join(g.to_text() for g in groebner(locus).polys))
    lines.append("  projected to x: " + ", ".join(g.to_text() for g in groebner(projected).polys))
    lines.append("  (y^2 + 1 = 0 has no real solution: the two singular points are complex conjugates)")

    quadric = homotopy_quadric(pencil, B, ell)
    lines.append("homotopy quadric: " + (quadric.to_text() if quadric is not None else "none"))

    report = degenerate_sdp(pencil, ell, SolveConfig(
        perturbation=B, short_circuit=False, workers=config.workers,
        stratum_budget=config.stratum_budget, trace_db=config.trace_db,
    ))
    lines.append(f"homotopy path: {report.status.value}")
    if report.minimizer is not None:
        coords = report.minimizer.point.rational_coordinates()
        shown = [rational_text(c) for c in coords] if coords is not None else list(report.minimizer.coordinates())
        lines.append(f"minimizer: {shown}  value: {report.minimizer.value.approx():.10g}")
    return lines, report


def walkthrough(identity: bool = False, config: Optional[SolveConfig] = None) -> List[str]:
    """Printable lines; ``identity`` restricts the output to the B = I variant."""
    if identity:
        return _identity_lines()
    lines, _ = _example_lines(config or SolveConfig())
    return lines + [""] + _identity_lines()
