"""Lagrange systems: incidence equations f plus g = sum z_i grad f_i - (grad phi, 0)."""

import logging
from dataclasses import dataclass
from typing import List, Tuple, Union

from degsdp.algebra.poly import MPoly, VarContext
from degsdp.bounds import lagrange_size
from degsdp.elimination.ideal import Ideal
from degsdp.errors import ObjectiveLengthError
from degsdp.pencil.model import EPS, DistanceObjective, ObjectiveForm
from degsdp.systems.incidence import IncidenceSystem, multidegree

logger = logging.getLogger(__name__)

Objective = Union[ObjectiveForm, DistanceObjective]


def z_names(c: int) -> Tuple[str, ...]:
    return tuple(f"z{i}" for i in range(1, c + 1))


@dataclass(frozen=True)
class LagrangeSystem:
    incidence: IncidenceSystem
    objective: Objective
    ctx: VarContext
    f: Tuple[MPoly, ...]
    g: Tuple[MPoly, ...]

    @property
    def rank(self) -> int:
        return self.incidence.rank

    @property
    def iota(self) -> Tuple[int, ...]:
        return self.incidence.iota

    @property
    def c(self) -> int:
        return self.incidence.c

    @property
    def z_names(self) -> Tuple[str, ...]:
        return z_names(self.c)

    @property
    def N(self) -> int:
        inc = self.incidence
        return lagrange_size(inc.m, inc.n, inc.rank)

    @property
    def polys(self) -> Tuple[MPoly, ...]:
        return self.f + self.g

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ctx, self.polys)

    def multidegrees(self) -> List[Tuple[int, ...]]:
        """Degrees of f then g in the groups ((eps, x), y, z)."""
        inc = self.incidence
        groups = ((EPS,) + inc.x_names, inc.y_names, self.z_names)
        return [multidegree(p, groups) for p in self.polys]


def build_lagrange(inc: IncidenceSystem, objective: Objective) -> LagrangeSystem:
    if objective.n != inc.n:
        raise ObjectiveLengthError(f"objective has {objective.n} coefficients, pencil has {inc.n} variables")
    zs = z_names(inc.c)
    ctx = inc.ctx.extend(*zs)
    f = tuple(p.coerce(ctx) for p in inc.polys)
    z = [ctx.gen(name) for name in zs]
    grad = objective.gradient(ctx)
    g = []
    for k, name in enumerate(inc.x_names + inc.y_names):
        acc = ctx.zero
        for zi, fi in zip(z, f):
            d = fi.diff(name)
            if d:
                acc = acc + zi * d
        if k < inc.n:
            acc = acc - grad[k]
        g.append(acc)
    logger.debug("lagrange r=%d iota=%s: N=%d", inc.rank, list(inc.iota), inc.c + len(g))
    return LagrangeSystem(inc, objective, ctx, f, tuple(g))


def dump_system(system: Union[IncidenceSystem, LagrangeSystem]) -> str:
    """Text dump: a header naming r, iota, c and N, then one polynomial per line."""
    if isinstance(system, LagrangeSystem):
        inc, polys, N = system.incidence, system.polys, system.N
    else:
        inc, polys = system, system.polys
        N = lagrange_size(inc.m, inc.n, inc.rank)
    header = f"# r={inc.rank} iota={list(inc.iota)} c={inc.c} N={N} variables={' '.join(polys[0].ctx.names) if polys else ''}"
    return "\n".join([header] + [p.to_text() for p in polys]) + "\n"
