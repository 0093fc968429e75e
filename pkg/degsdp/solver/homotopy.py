"""
DegSDP homotopy solver: zero-point short-circuit, the rank-stratum loop,
exact candidate filtering and minimizer selection.

Strata are independent: each one runs ``solve_stratum`` in its own worker
process under a time budget, at most ``workers`` at a time. With
``workers=0`` they run inline in the calling thread.
"""

import asyncio
import itertools
import logging
import multiprocessing
import time
from dataclasses import dataclass, replace
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix

from degsdp.algebra.poly import VarContext
from degsdp.bounds import stratum_bounds
from degsdp.elimination.params import OneDimParam, ZeroDimParam
from degsdp.elimination.realroots import AlgebraicNumber, AlgebraicPoint, real_points
from degsdp.errors import (
    GenericityFailure,
    InstanceError,
    NotZeroDimensionalError,
    ObjectiveLengthError,
    SeparatingFormError,
    StratumTimeout,
)
from degsdp.pencil.degenerate import ConeVerdict, cone_unboundedness_test, detect_zero_point, feasibility
from degsdp.pencil.model import DistanceObjective, ObjectiveForm, PerturbationMatrix, SymmetricPencil, sample_perturbation
from degsdp.pencil.psd import psd_check
from degsdp.solver.report import (
    OBJECTIVE_DELTA,
    Candidate,
    MinimizerCertificate,
    SolveConfig,
    SolveReport,
    SolveStatus,
    StratumRecord,
    StratumStatus,
)
from degsdp.solver.steps import cut, finite_fiber, odp, union_all
from degsdp.systems.incidence import build_incidence
from degsdp.systems.lagrange import Objective, build_lagrange
from degsdp.trace_logger import TraceLogger, new_run_id

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StratumOutcome:
    record: StratumRecord
    curve: Optional[OneDimParam] = None
    limits: Optional[ZeroDimParam] = None


def strata(m: int, max_rank: Optional[int] = None) -> List[Tuple[int, Tuple[int, ...]]]:
    """(r, iota) for r = 1..m-1 (capped by max_rank), iota of size m - r."""
    top = m - 1 if max_rank is None else min(max_rank, m - 1)
    return [
        (r, iota)
        for r in range(1, top + 1)
        for iota in itertools.combinations(range(1, m + 1), m - r)
    ]


# ------------------------------------------------------------------
# One stratum (worker side)
# ------------------------------------------------------------------

def solve_stratum(
    pencil: SymmetricPencil,
    perturbation: ImmutableMatrix,
    objective: Objective,
    rank: int,
    iota: Tuple[int, ...],
) -> StratumOutcome:
    """Lagrange system, curve and eps -> 0 limits of one stratum."""
    started = time.monotonic()
    iota = tuple(iota)
    bounds = stratum_bounds(pencil.m, pencil.n, rank)
    L = build_lagrange(build_incidence(pencil, perturbation, rank, iota), objective)
    try:
        fiber = finite_fiber(L)
        curve = odp(L)
        limits = cut(curve)
    except (GenericityFailure, NotZeroDimensionalError, SeparatingFormError) as exc:
        logger.warning("stratum r=%d iota=%s: %s", rank, list(iota), exc)
        record = StratumRecord(
            rank, iota, StratumStatus.GENERICITY_FAILURE, time.monotonic() - started,
            bounds=bounds, message=str(exc),
        )
        return StratumOutcome(record)

    record = StratumRecord(
        rank,
        iota,
        StratumStatus.EMPTY if limits.is_empty else StratumStatus.OK,
        time.monotonic() - started,
        eps_bar=fiber.eps_bar,
        curve_degree=None if curve.is_empty else curve.degree,
        cut_degree=limits.degree,
        bounds=bounds,
        residual_ok=curve.residual_ok() if curve.shaped else None,
    )
    if record.within_bound is False:
        logger.warning(
            "stratum r=%d iota=%s: curve degree %d above bound %d",
            rank, list(iota), record.curve_degree, bounds.curve_bound,
        )
    return StratumOutcome(record, curve, limits)


# ------------------------------------------------------------------
# Scheduling
# ------------------------------------------------------------------

async def _in_process(args: tuple, budget: float) -> StratumOutcome:
    started = time.monotonic()
    pool = multiprocessing.get_context().Pool(processes=1)
    try:
        handle = pool.apply_async(solve_stratum, args)
        return await asyncio.to_thread(handle.get, budget)
    except multiprocessing.TimeoutError:
        rank, iota = args[3], tuple(args[4])
        exc = StratumTimeout(rank, iota, budget)
        logger.warning("%s", exc)
        record = StratumRecord(rank, iota, StratumStatus.TIMEOUT, time.monotonic() - started, message=str(exc))
        return StratumOutcome(record)
    finally:
        pool.terminate()
        await asyncio.to_thread(pool.join)


async def run_strata(
    pencil: SymmetricPencil,
    perturbation: PerturbationMatrix,
    objective: Objective,
    todo: Sequence[Tuple[int, Tuple[int, ...]]],
    config: SolveConfig,
) -> List[StratumOutcome]:
    """Outcomes in the order of ``todo``."""
    B = perturbation.matrix
    if config.workers == 0:
        return [solve_stratum(pencil, B, objective, r, iota) for r, iota in todo]

    gate = asyncio.Semaphore(config.workers)

    async def one(r: int, iota: Tuple[int, ...]) -> StratumOutcome:
        async with gate:
            return await _in_process((pencil, B, objective, r, iota), config.stratum_budget)

    return list(await asyncio.gather(*(one(r, iota) for r, iota in todo)))


def _perturbations(m: int, config: SolveConfig) -> Iterator[PerturbationMatrix]:
    if config.perturbation is not None:
        yield config.perturbation
        return
    for k in range(config.max_reseeds + 1):
        yield sample_perturbation(m, config.seed + k)


# ------------------------------------------------------------------
# Candidates
# ------------------------------------------------------------------

def _better(a: Candidate, b: Candidate) -> bool:
    """Smaller value, then smaller rank, then the smaller isolating interval."""
    c = a.value.compare(b.value)
    if c:
        return c < 0
    if a.certificate.rank != b.certificate.rank:
        return a.certificate.rank < b.certificate.rank
    return a.point.root.interval < b.point.root.interval


def candidates_of(
    pencil: SymmetricPencil, objective: ObjectiveForm, limits: ZeroDimParam, rank: int, iota: Tuple[int, ...]
) -> List[Candidate]:
    out = []
    ell = objective.as_poly(limits.ctx)
    for point in real_points(limits):
        cert = psd_check(pencil, point)
        out.append(Candidate(point, cert, point.value_of(ell), rank, iota))
    return out


def select_minimizer(candidates: Sequence[Candidate]) -> Optional[Candidate]:
    best = None
    for cand in candidates:
        if not cand.feasible:
            continue
        if best is None or _better(cand, best):
            best = cand
    return best


def _rational_point(pencil: SymmetricPencil, x) -> AlgebraicPoint:
    return real_points(ZeroDimParam.from_point(VarContext(pencil.variables), x))[0]


def _zero_point_minimizer(pencil: SymmetricPencil, objective: ObjectiveForm, x0) -> Candidate:
    point = _rational_point(pencil, x0)
    cert = psd_check(pencil, point)
    return Candidate(point, cert, AlgebraicNumber.rational(objective.value(x0)), 0, ())


# ------------------------------------------------------------------
# Driver
# ------------------------------------------------------------------

class _Trace:
    """Optional audit trail; every call is a no-op without a trace path."""

    def __init__(self, path: Optional[str], run_id: str):
        self.run_id = run_id
        self.logger = TraceLogger(path) if path else None

    def __call__(self, stage: str, status: str, **fields):
        if self.logger is not None:
            self.logger.log(self.run_id, stage, status, **fields)

    def close(self):
        if self.logger is not None:
            self.logger.close()


async def solve_async(
    pencil: SymmetricPencil, objective: ObjectiveForm, config: Optional[SolveConfig] = None
) -> SolveReport:
    """Minimize objective over {x : A(x) >= 0}; see SolveReport for the outcome."""
    config = config or SolveConfig()
    if objective.n != pencil.n:
        raise ObjectiveLengthError(f"objective has {objective.n} coefficients, pencil has {pencil.n} variables")
    if pencil.n == 0:
        raise InstanceError("nothing to optimize without variables", "n")

    started = time.monotonic()
    run_id = new_run_id()
    trace = _Trace(config.trace_db, run_id)
    delta = OBJECTIVE_DELTA if config.allow_objective_perturbation else None
    obj = objective.perturbed(delta) if delta is not None else objective
    report = SolveReport(SolveStatus.EMPTY_OR_UNBOUNDED, obj, objective_delta=delta, run_id=run_id)
    logger.info("run %s: m=%d n=%d objective=%s", run_id, pencil.m, pencil.n, obj.to_document())

    try:
        if config.short_circuit:
            x0 = detect_zero_point(pencil)
            if x0 is not None:
                nested = replace(config, trace_db=None)
                try:
                    cone = await asyncio.to_thread(
                        cone_unboundedness_test, pencil, x0, obj, lambda P: feasibility(P, nested)
                    )
                except (GenericityFailure, StratumTimeout) as exc:
                    timed_out = isinstance(exc, StratumTimeout)
                    report.status = SolveStatus.STRATUM_TIMEOUT if timed_out else SolveStatus.GENERICITY_FAILURE
                    report.diagnostics.append(f"cone test undecided: {exc}")
                    trace("zero_point", report.status.value, detail={"error": str(exc)})
                    return report
                report.cone = cone
                if cone.verdict is ConeVerdict.UNBOUNDED_BELOW:
                    report.status = SolveStatus.UNBOUNDED_BELOW
                else:
                    cand = _zero_point_minimizer(pencil, obj, x0)
                    report.candidates = [cand]
                    report.minimizer = MinimizerCertificate.from_candidate(cand)
                    report.status = SolveStatus.ZERO_POINT_VERTEX
                trace("zero_point", report.status.value, detail=cone.to_json())
                return report

        if obj.is_zero:
            report.status = SolveStatus.GENERICITY_FAILURE
            report.diagnostics.append("zero objective: every feasible point is critical")
            trace("objective", report.status.value)
            return report

        todo = strata(pencil.m, config.max_rank)
        outcomes: List[StratumOutcome] = []
        for attempt, B in enumerate(_perturbations(pencil.m, config)):
            report.perturbation = B
            report.reseeds = attempt
            outcomes = await run_strata(pencil, B, obj, todo, config)
            for o in outcomes:
                s = o.record
                trace("stratum", s.status.value, rank=s.rank, iota=s.iota,
                      degree=s.curve_degree, seconds=s.seconds, detail=s.to_json())
            failed = [o.record for o in outcomes if o.record.status is StratumStatus.GENERICITY_FAILURE]
            if not failed:
                break
            note = f"perturbation {B.to_document()} not generic for strata {[(s.rank, list(s.iota)) for s in failed]}"
            report.diagnostics.append(note)
            logger.warning("run %s: %s", run_id, note)
            trace("reseed", "genericity_failure", detail={"attempt": attempt, "seed": B.seed})
        else:
            report.strata = [o.record for o in outcomes]
            report.status = SolveStatus.GENERICITY_FAILURE
            return report

        report.strata = [o.record for o in outcomes]
        ctx = VarContext(pencil.variables)
        for r in range(1, pencil.m):
            found = [o.limits for o in outcomes if o.record.rank == r and o.limits is not None]
            report.Q.append(union_all(found, ctx))
        for o in outcomes:
            if o.limits is not None and not o.limits.is_empty:
                report.candidates.extend(candidates_of(pencil, obj, o.limits, o.record.rank, o.record.iota))

        best = select_minimizer(report.candidates)
        if best is not None:
            degree = next(
                (o.record.curve_degree for o in outcomes
                 if o.record.rank == best.rank and o.record.iota == best.iota),
                None,
            )
            report.minimizer = MinimizerCertificate.from_candidate(best, degree)
        if report.timeouts:
            report.status = SolveStatus.STRATUM_TIMEOUT
        elif best is not None:
            report.status = SolveStatus.SOLVED
        else:
            report.status = SolveStatus.EMPTY_OR_UNBOUNDED
            report.diagnostics.append("no feasible candidate: the spectrahedron is empty or the objective is unbounded")
        trace("select", report.status.value, detail=report.minimizer.to_json() if report.minimizer else None)
        return report
    finally:
        report.seconds = time.monotonic() - started
        logger.info("run %s: %s in %.2fs", run_id, report.status.value, report.seconds)
        trace.close()


def degenerate_sdp(
    pencil: SymmetricPencil, objective: ObjectiveForm, config: Optional[SolveConfig] = None
) -> SolveReport:
    """Blocking entry point; call ``solve_async`` from inside an event loop."""
    return asyncio.run(solve_async(pencil, objective, config))


# ------------------------------------------------------------------
# Feasibility
# ------------------------------------------------------------------

async def _feasible_point_async(pencil: SymmetricPencil, config: SolveConfig) -> Optional[AlgebraicPoint]:
    center = DistanceObjective.generic(pencil.n)
    if psd_check(pencil, center.center).is_psd:
        return _rational_point(pencil, center.center)
    if all(M.is_zero_matrix for M in pencil.matrices[1:]):
        # constant pencil: the center already decided it
        return None
    x0 = detect_zero_point(pencil)
    if x0 is not None:
        return _rational_point(pencil, x0)

    todo = strata(pencil.m)
    for attempt, B in enumerate(_perturbations(pencil.m, config)):
        outcomes = await run_strata(pencil, B, center, todo, config)
        for o in outcomes:
            if o.limits is None or o.limits.is_empty:
                continue
            for point in real_points(o.limits):
                if psd_check(pencil, point).is_psd:
                    logger.info("feasible point on stratum r=%d iota=%s", o.record.rank, list(o.record.iota))
                    return point
        failed = [o.record for o in outcomes if o.record.status is StratumStatus.GENERICITY_FAILURE]
        if not failed:
            timed_out = next((o.record for o in outcomes if o.record.status is StratumStatus.TIMEOUT), None)
            if timed_out is not None:
                raise StratumTimeout(timed_out.rank, timed_out.iota, config.stratum_budget)
            return None
        logger.warning("feasibility attempt %d: perturbation not generic for %d strata", attempt, len(failed))
    raise GenericityFailure(f"no generic perturbation found for the nearest-point system after {attempt + 1} attempts")


def find_feasible_point(pencil: SymmetricPencil, config: Optional[SolveConfig] = None) -> Optional[AlgebraicPoint]:
    """A point of S(A), or None when S(A) is empty.

    The point of S(A) nearest a generic center is either the center, a zero
    point, or an eps -> 0 limit of critical points of the distance on some
    rank stratum, so checking those candidates decides emptiness exactly.
    """
    if pencil.n == 0:
        raise InstanceError("a point needs at least one variable", "n")
    cfg = replace(config or SolveConfig(), trace_db=None)
    return asyncio.run(_feasible_point_async(pencil, cfg))
