"""
Per-stratum steps of the homotopy: genericity check at a fixed eps, the
projected curve of a Lagrange system (odp), its limits at eps = 0 (cut) and
the union of finite sets.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from sympy import Rational

from degsdp.algebra.matrix import PolyMatrix, minors
from degsdp.algebra.poly import VarContext, rational_text
from degsdp.elimination.ideal import (
    EMPTY,
    Ideal,
    dimension,
    eliminate,
    horizontal_part,
    instantiate,
    intersect,
    is_unit,
    product,
    same_ideal,
    saturate,
)
from degsdp.elimination.params import OneDimParam, ZeroDimParam, one_dim_param, zero_dim_param
from degsdp.errors import ContextMismatchError, GenericityFailure, NotCurveError
from degsdp.pencil.model import EPS
from degsdp.pencil.psd import matrix_certificate
from degsdp.systems.lagrange import LagrangeSystem

logger = logging.getLogger(__name__)

# eps values tried in order; only finitely many are bad for a given system
EPS_LADDER = tuple(Rational(1, p) for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29))


# ------------------------------------------------------------------
# Genericity
# ------------------------------------------------------------------

@dataclass(frozen=True)
class GenericityReport:
    eps_bar: Rational
    dimension: int
    flagged: bool
    reason: str = ""

    @property
    def finite(self) -> bool:
        return self.dimension <= 0

    def to_json(self) -> dict:
        return {
            "eps_bar": rational_text(self.eps_bar),
            "dimension": self.dimension,
            "flagged": self.flagged,
            "reason": self.reason,
        }


def genericity_diagnostics(L: LagrangeSystem, eps_bar) -> GenericityReport:
    """Dimension of the Lagrange system at eps = eps_bar, plus the degenerate-input flags."""
    eps_bar = Rational(eps_bar)
    ideal = L.ideal
    if EPS in ideal.ctx:
        ideal = instantiate(ideal, {EPS: eps_bar})
    dim = dimension(ideal)

    reasons = []
    if L.objective.is_zero:
        reasons.append("zero objective: every feasible point is critical")
    B = L.incidence.perturbation
    if B is None:
        reasons.append("no perturbation")
    elif not matrix_certificate(B).is_pd:
        reasons.append("perturbation is not positive definite")
    if dim > 0:
        reasons.append(f"Lagrange system has dimension {dim} at eps={rational_text(eps_bar)}")
    report = GenericityReport(eps_bar, dim, bool(reasons), "; ".join(reasons))
    if report.flagged:
        logger.warning("stratum r=%d iota=%s flagged: %s", L.rank, list(L.iota), report.reason)
    return report


def finite_fiber(L: LagrangeSystem, ladder: Sequence[Rational] = EPS_LADDER) -> GenericityReport:
    """First eps on the ladder where the system is finite; GenericityFailure if there is none."""
    last = None
    for eps_bar in ladder:
        at = {EPS: eps_bar} if EPS in L.ctx else {}
        if is_unit(instantiate(L.incidence.ideal, at)):
            return GenericityReport(eps_bar, EMPTY, False)
        dim = dimension(instantiate(L.ideal, at))
        if dim <= 0:
            return GenericityReport(eps_bar, dim, False)
        logger.warning(
            "stratum r=%d iota=%s: dimension %d at eps=%s, trying next",
            L.rank, list(L.iota), dim, rational_text(eps_bar),
        )
        last = dim
    raise GenericityFailure(
        f"stratum r={L.rank} iota={list(L.iota)} is {last}-dimensional at every eps on the ladder"
    )


# ------------------------------------------------------------------
# Critical ideal and rank branches
# ------------------------------------------------------------------

def critical_ideal(L: LagrangeSystem) -> Ideal:
    """The Lagrange system with z eliminated: f = 0 and rank [J^T | grad] <= c, in (eps, x, y)."""
    inc = L.incidence
    ctx = inc.ctx
    grad = L.objective.gradient(ctx)
    rows = []
    for k, v in enumerate(inc.x_names + inc.y_names):
        row = tuple(f.diff(v) for f in inc.polys)
        rows.append(row + (grad[k] if k < inc.n else ctx.zero,))
    upper = [h for h in minors(PolyMatrix(ctx, tuple(rows)), inc.c + 1) if h]
    return Ideal(ctx, tuple(inc.polys) + tuple(upper))


def rank_branches(L: LagrangeSystem, ideal: Optional[Ideal] = None) -> Ideal:
    """Components of ``ideal`` (default: the Lagrange ideal) where A + eps*B has rank exactly r generically."""
    inc = L.incidence
    ideal = L.ideal if ideal is None else ideal
    if inc.pencil is None:
        return ideal
    A = inc.pencil.poly_matrix(ideal.ctx, inc.perturbation)
    r = L.rank
    upper = [h for h in minors(A, r + 1) if h]

    selected = ideal
    if r > 0:
        lower = list(dict.fromkeys(h for h in minors(A, r) if h))
        if not lower:
            return Ideal.unit(ideal.ctx)
        saturations = []
        for h in lower:
            sat = saturate(ideal, h)
            if same_ideal(sat, ideal):
                break
            saturations.append(sat)
        else:
            selected = saturations[0]
            for sat in saturations[1:]:
                selected = intersect(selected, sat)
            logger.debug("stratum r=%d iota=%s: dropped lower-rank components", r, list(L.iota))
    return selected.with_generators(*upper) if upper else selected


# ------------------------------------------------------------------
# ODP, CUT, UNION
# ------------------------------------------------------------------

def odp(L: LagrangeSystem, ladder: Sequence[Rational] = EPS_LADDER) -> OneDimParam:
    """Curve of rank-r Lagrange solutions, projected to (eps, x).

    z is eliminated through the minors of the augmented Jacobian, y by a
    block Groebner basis; the components over finitely many eps (rank
    drops of the Jacobian among them) are saturated away before the rank
    selection, which only involves (eps, x).
    """
    x_names = L.incidence.x_names
    empty = OneDimParam.empty(VarContext((EPS,) + x_names), EPS)
    finite_fiber(L, ladder)
    if dimension(L.incidence.ideal) <= 0:
        logger.info("stratum r=%d iota=%s: incidence has no curve", L.rank, list(L.iota))
        return empty

    critical = critical_ideal(L)
    projected = eliminate(critical, L.incidence.y_names)
    horizontal = horizontal_part(projected, EPS)
    selected = rank_branches(L, horizontal)
    dim = dimension(selected)
    if dim == EMPTY or dim == 0:
        logger.info("stratum r=%d iota=%s: no curve (dimension %d)", L.rank, list(L.iota), dim)
        return empty
    if dim > 1:
        raise GenericityFailure(f"stratum r={L.rank} iota={list(L.iota)} has dimension {dim} with eps free")
    try:
        curve = one_dim_param(selected, keep=x_names, parameter=EPS)
    except NotCurveError as exc:
        raise GenericityFailure(str(exc)) from exc
    logger.info("stratum r=%d iota=%s: curve of degree %d", L.rank, list(L.iota), curve.degree)
    return curve


def cut(curve: OneDimParam) -> ZeroDimParam:
    """Limits of the curve branches at eps = 0 (closure limits, real or not)."""
    x_ctx = VarContext(curve.kept)
    if curve.is_empty:
        return ZeroDimParam.empty(x_ctx)
    ideal = Ideal(curve.ctx, curve.basis)
    eps = curve.ctx.gen(curve.parameter)
    limits = saturate(ideal, eps).with_generators(eps)
    if is_unit(limits):
        return ZeroDimParam.empty(x_ctx)
    projected = eliminate(limits, [curve.parameter]).coerce(x_ctx)
    return zero_dim_param(projected)


def union(Q1: ZeroDimParam, Q2: ZeroDimParam) -> ZeroDimParam:
    """Parametrization of Z(Q1) ∪ Z(Q2)."""
    if Q1.ctx != Q2.ctx:
        raise ContextMismatchError(f"context {Q1.ctx.names} != {Q2.ctx.names}")
    if Q1.is_empty:
        return Q2
    if Q2.is_empty:
        return Q1
    return zero_dim_param(product(Q1.to_ideal(), Q2.to_ideal()))


def union_all(params: Sequence[ZeroDimParam], ctx) -> ZeroDimParam:
    merged = ZeroDimParam.empty(ctx)
    for Q in params:
        merged = union(merged, Q)
    return merged
