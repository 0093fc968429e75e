"""
Solver configuration and result types.

A SolveReport is the single owner of everything one run produced: the
per-rank parametrizations, the filtered candidates, the certified minimizer
and one StratumRecord per (r, iota) with timings and the degree audit.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from sympy import Rational

from degsdp.algebra.poly import rational_text
from degsdp.bounds import StratumBounds
from degsdp.config import Settings
from degsdp.elimination.params import ZeroDimParam
from degsdp.elimination.realroots import AlgebraicNumber, AlgebraicPoint
from degsdp.pencil.degenerate import ConeTestResult
from degsdp.pencil.model import ObjectiveForm, PerturbationMatrix
from degsdp.pencil.psd import PSDCertificate

logger = logging.getLogger(__name__)

# objective shift delta * (1, 2, ..., n) when the caller opts in
OBJECTIVE_DELTA = Rational(1, 1000)


class SolveStatus(Enum):
    SOLVED = "solved"
    ZERO_POINT_VERTEX = "zero_point_vertex"
    UNBOUNDED_BELOW = "unbounded_below"
    EMPTY_OR_UNBOUNDED = "empty_or_unbounded"
    GENERICITY_FAILURE = "genericity_failure"
    STRATUM_TIMEOUT = "stratum_timeout"


class StratumStatus(Enum):
    OK = "ok"
    EMPTY = "empty"
    GENERICITY_FAILURE = "genericity_failure"
    TIMEOUT = "timeout"


# ------------------------------------------------------------------
# Configuration
# ------------------------------------------------------------------

@dataclass(frozen=True)
class SolveConfig:
    """Knobs of one solver run.

    ``perturbation`` is an explicit B; when None a B is sampled from ``seed``
    and resampled up to ``max_reseeds`` times after a genericity failure.
    ``workers`` = 0 runs the strata inline, without a time budget.
    """

    seed: int = 0
    perturbation: Optional[PerturbationMatrix] = None
    stratum_budget: float = 60.0
    max_rank: Optional[int] = None
    allow_objective_perturbation: bool = False
    short_circuit: bool = True
    workers: int = 0
    max_reseeds: int = 5
    trace_db: Optional[str] = None

    def __post_init__(self):
        if not self.stratum_budget > 0:
            raise ValueError(f"stratum budget must be positive, got {self.stratum_budget}")
        if self.workers < 0:
            raise ValueError("workers must be non-negative")
        if self.max_reseeds < 0:
            raise ValueError("max_reseeds must be non-negative")
        if self.max_rank is not None and self.max_rank < 1:
            raise ValueError("max_rank must be at least 1")

    @classmethod
    def from_settings(cls, settings: Settings, **overrides: Any) -> "SolveConfig":
        base = cls(
            seed=settings.seed,
            stratum_budget=settings.stratum_budget,
            workers=settings.workers,
            max_reseeds=settings.max_reseeds,
            trace_db=settings.trace_db,
        )
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(base, **overrides) if overrides else base


# ------------------------------------------------------------------
# Per-stratum records
# ------------------------------------------------------------------

@dataclass(frozen=True)
class StratumRecord:
    rank: int
    iota: Tuple[int, ...]
    status: StratumStatus
    seconds: float
    eps_bar: Optional[Rational] = None
    curve_degree: Optional[int] = None
    cut_degree: Optional[int] = None
    bounds: Optional[StratumBounds] = None
    residual_ok: Optional[bool] = None
    message: str = ""

    @property
    def within_bound(self) -> Optional[bool]:
        if self.bounds is None or self.curve_degree is None:
            return None
        return self.curve_degree <= self.bounds.curve_bound

    def to_json(self) -> dict:
        out = {
            "rank": self.rank,
            "iota": list(self.iota),
            "status": self.status.value,
            "seconds": round(self.seconds, 4),
            "eps_bar": rational_text(self.eps_bar) if self.eps_bar is not None else None,
            "curve_degree": self.curve_degree,
            "cut_degree": self.cut_degree,
            "residual_ok": self.residual_ok,
        }
        if self.bounds is not None:
            out["bounds"] = {
                "theta1": self.bounds.theta1,
                "multilinear": self.bounds.multilinear,
                "curve_bound": self.bounds.curve_bound,
                "comparison_bound": self.bounds.comparison_bound,
                "within_bound": self.within_bound,
            }
        if self.message:
            out["message"] = self.message
        return out


# ------------------------------------------------------------------
# Candidates and the minimizer
# ------------------------------------------------------------------

@dataclass(frozen=True)
class Candidate:
    """A real point of some Z(Q_r) with its PSD verdict and objective value."""

    point: AlgebraicPoint
    certificate: PSDCertificate
    value: AlgebraicNumber
    rank: int
    iota: Tuple[int, ...]

    @property
    def feasible(self) -> bool:
        return self.certificate.is_psd

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "psd": self.certificate.to_json(),
            "value": self.value.to_json(),
            "stratum": {"rank": self.rank, "iota": list(self.iota)},
        }


@dataclass(frozen=True)
class MinimizerCertificate:
    point: AlgebraicPoint
    rank: int
    value: AlgebraicNumber
    certificate: PSDCertificate
    provenance: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_candidate(cls, cand: Candidate, stratum_degree: Optional[int] = None) -> "MinimizerCertificate":
        provenance = {"rank": cand.rank, "iota": list(cand.iota), "degree": stratum_degree}
        return cls(cand.point, cand.certificate.rank, cand.value, cand.certificate, provenance)

    def coordinates(self, digits: int = 15) -> Tuple[float, ...]:
        return self.point.approx(digits)

    def to_json(self) -> dict:
        refined = self.value.refine_to(Rational(1, 10 ** 12))
        return {
            "coordinates": list(self.coordinates()),
            "exact_coordinates": (
                [rational_text(c) for c in self.point.rational_coordinates()]
                if self.point.rational_coordinates() is not None else None
            ),
            "parametrization": self.point.param.to_json(),
            "root": self.point.root.to_json(),
            "rank": self.rank,
            "psd": self.certificate.to_json(),
            "objective": {
                "value": self.value.approx(),
                "minimal_polynomial": self.value.poly.to_text(),
                "interval": [rational_text(refined.lo), rational_text(refined.hi)],
            },
            "provenance": self.provenance,
        }


# ------------------------------------------------------------------
# Report
# ------------------------------------------------------------------

@dataclass
class SolveReport:
    status: SolveStatus
    objective: ObjectiveForm
    Q: List[ZeroDimParam] = field(default_factory=list)
    candidates: List[Candidate] = field(default_factory=list)
    minimizer: Optional[MinimizerCertificate] = None
    strata: List[StratumRecord] = field(default_factory=list)
    perturbation: Optional[PerturbationMatrix] = None
    objective_delta: Optional[Rational] = None
    cone: Optional[ConeTestResult] = None
    reseeds: int = 0
    diagnostics: List[str] = field(default_factory=list)
    run_id: str = ""
    seconds: float = 0.0

    @property
    def timeouts(self) -> List[StratumRecord]:
        return [s for s in self.strata if s.status is StratumStatus.TIMEOUT]

    def bound_audit(self) -> List[dict]:
        return [
            {
                "rank": s.rank,
                "iota": list(s.iota),
                "curve_degree": s.curve_degree,
                "curve_bound": s.bounds.curve_bound,
                "within_bound": s.within_bound,
            }
            for s in self.strata
            if s.bounds is not None and s.curve_degree is not None
        ]

    def to_json(self) -> dict:
        return {
            "run_id": self.run_id,
            "status": self.status.value,
            "objective": self.objective.to_document(),
            "objective_perturbation": rational_text(self.objective_delta) if self.objective_delta is not None else None,
            "perturbation": self.perturbation.to_document() if self.perturbation is not None else None,
            "reseeds": self.reseeds,
            "minimizer": self.minimizer.to_json() if self.minimizer is not None else None,
            "cone_test": self.cone.to_json() if self.cone is not None else None,
            "Q": [q.to_json() for q in self.Q],
            "candidates": [c.to_json() for c in self.candidates],
            "strata": [s.to_json() for s in self.strata],
            "bound_audit": self.bound_audit(),
            "timeouts": [{"rank": s.rank, "iota": list(s.iota)} for s in self.timeouts],
            "diagnostics": list(self.diagnostics),
            "seconds": round(self.seconds, 4),
        }

    def summary(self) -> str:
        """Human-readable lines for the text output mode."""
        lines = [f"status: {self.status.value}"]
        if self.minimizer is not None:
            mz = self.minimizer
            coords = ", ".join(f"{c:.10g}" for c in mz.coordinates())
            lines.append(f"minimizer: ({coords})")
            lines.append(f"rank: {mz.rank}  psd: {mz.certificate.label}")
            lines.append(f"objective: {mz.value.approx():.10g}  [{mz.value.poly.to_text()} = 0]")
        if self.objective_delta is not None:
            lines.append(f"objective perturbed by {rational_text(self.objective_delta)}*(1..n)")
        for s in self.strata:
            lines.append(
                f"  r={s.rank} iota={list(s.iota)} {s.status.value} "
                f"deg={s.curve_degree} cut={s.cut_degree} {s.seconds:.2f}s"
            )
        lines.extend(f"note: {d}" for d in self.diagnostics)
        return "\n".join(lines)
