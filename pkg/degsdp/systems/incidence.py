"""
Perturbed incidence systems for a rank stratum (r, iota).

Y is m x (m-r) with the rows in iota fixed to the identity, so the free
kernel entries are y_i_j for rows i outside iota. The system keeps the
entries (i, j) of (A + eps*B)Y with i outside iota, and for i the a-th row of
iota only the entries with a >= j; the dropped entries lie in the ideal of the
kept ones by symmetry of Y^T (A + eps*B) Y.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Rational

from degsdp.algebra.matrix import PolyMatrix, maximal_minors, jacobian
from degsdp.algebra.poly import MPoly, VarContext, rational_text, to_rational
from degsdp.bounds import stratum_size
from degsdp.elimination.ideal import GroebnerBasis, Ideal, groebner, instantiate
from degsdp.errors import StratumError
from degsdp.pencil.model import EPS, SymmetricPencil, x_names

logger = logging.getLogger(__name__)


def y_name(i: int, j: int) -> str:
    """Kernel entry in row i, column j (both 1-based)."""
    return f"y_{i}_{j}"


def validate_stratum(m: int, r: int, iota: Iterable[int]) -> Tuple[int, ...]:
    iota = tuple(sorted(iota))
    if not 0 <= r <= m - 1:
        raise StratumError(f"rank {r} outside 0..{m - 1}")
    if len(iota) != m - r or len(set(iota)) != len(iota):
        raise StratumError(f"iota {list(iota)} must have {m - r} distinct rows")
    if any(i < 1 or i > m for i in iota):
        raise StratumError(f"iota {list(iota)} not within 1..{m}")
    return iota


def multidegree(p: MPoly, groups: Sequence[Sequence[str]]) -> Tuple[int, ...]:
    """Largest degree of p in each variable group (names absent from p's context count as 0)."""
    out = []
    for group in groups:
        names = [n for n in group if n in p.ctx]
        out.append(max(p.group_degree(names), 0) if names else 0)
    return tuple(out)


@dataclass(frozen=True)
class IncidenceSystem:
    """Reduced incidence equations of stratum (r, iota) in (eps, x, y)."""

    m: int
    n: int
    rank: int
    iota: Tuple[int, ...]
    ctx: VarContext
    polys: Tuple[MPoly, ...]
    perturbation: Optional[ImmutableMatrix] = None
    pencil: Optional[SymmetricPencil] = None

    @property
    def c(self) -> int:
        return len(self.polys)

    @property
    def perturbed(self) -> bool:
        return self.perturbation is not None

    @property
    def x_names(self) -> Tuple[str, ...]:
        return x_names(self.n)

    @property
    def y_names(self) -> Tuple[str, ...]:
        return tuple(n for n in self.ctx.names if n.startswith("y_"))

    @property
    def kernel_size(self) -> int:
        return self.rank * (self.m - self.rank)

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ctx, self.polys)

    def multidegrees(self) -> List[Tuple[int, ...]]:
        groups = ((EPS,) + self.x_names, self.y_names)
        return [multidegree(p, groups) for p in self.polys]


def _kernel_matrix(ctx: VarContext, m: int, r: int, iota: Tuple[int, ...], free_rows: bool) -> PolyMatrix:
    """Y with rows in iota equal to the identity (or free when ``free_rows``)."""
    rows = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m - r + 1):
            if i in iota and not free_rows:
                row.append(ctx.one if iota.index(i) + 1 == j else ctx.zero)
            else:
                row.append(ctx.gen(y_name(i, j)))
        rows.append(tuple(row))
    return PolyMatrix(ctx, tuple(rows))


def _context(pencil: SymmetricPencil, names: Sequence[str], perturbed: bool) -> VarContext:
    head = (EPS,) if perturbed else ()
    return VarContext(head + x_names(pencil.n) + tuple(names))


def build_incidence(pencil: SymmetricPencil, perturbation, rank: int, iota: Iterable[int]) -> IncidenceSystem:
    """Reduced system of (A + eps*B)Y = 0, Y_iota = I; ``perturbation`` None drops eps."""
    m = pencil.m
    iota = validate_stratum(m, rank, iota)
    B = ImmutableMatrix(perturbation) if perturbation is not None else None
    if B is not None and B.shape != (m, m):
        raise StratumError(f"perturbation shape {B.shape} does not match m={m}")
    free = [y_name(i, j) for i in range(1, m + 1) if i not in iota for j in range(1, m - rank + 1)]
    ctx = _context(pencil, free, B is not None)
    A = pencil.poly_matrix(ctx, B)
    AY = A @ _kernel_matrix(ctx, m, rank, iota, free_rows=False)

    polys = []
    for i in range(1, m + 1):
        for j in range(1, m - rank + 1):
            if i in iota and iota.index(i) + 1 < j:
                continue
            polys.append(AY[i - 1, j - 1])
    expected = stratum_size(m, rank)
    if len(polys) != expected:
        raise AssertionError(f"incidence size {len(polys)} != {expected}")
    logger.debug("incidence r=%d iota=%s: %d equations in %d variables", rank, list(iota), len(polys), len(ctx))
    return IncidenceSystem(m, pencil.n, rank, iota, ctx, tuple(polys), B, pencil)


def build_unreduced_incidence(pencil: SymmetricPencil, perturbation, rank: int, iota: Iterable[int]) -> Ideal:
    """All entries of (A + eps*B)Y and of Y_iota - I, with every y_i_j a variable."""
    m = pencil.m
    iota = validate_stratum(m, rank, iota)
    B = ImmutableMatrix(perturbation) if perturbation is not None else None
    names = [y_name(i, j) for i in range(1, m + 1) for j in range(1, m - rank + 1)]
    ctx = _context(pencil, names, B is not None)
    Y = _kernel_matrix(ctx, m, rank, iota, free_rows=True)
    AY = pencil.poly_matrix(ctx, B) @ Y
    polys = AY.flat()
    for a, i in enumerate(iota, start=1):
        for j in range(1, m - rank + 1):
            polys.append(Y[i - 1, j - 1] - (1 if a == j else 0))
    return Ideal(ctx, tuple(polys))


# ------------------------------------------------------------------
# Regularity
# ------------------------------------------------------------------

class Regularity(Enum):
    REGULAR = "regular"
    SINGULAR = "singular"


@dataclass(frozen=True)
class RegularityResult:
    verdict: Regularity
    eps: Optional[Rational]
    witness: Optional[GroebnerBasis] = None

    @property
    def is_regular(self) -> bool:
        return self.verdict is Regularity.REGULAR

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value, "eps": rational_text(self.eps) if self.eps is not None else None}
        if self.witness is not None:
            out["witness"] = [p.to_text() for p in self.witness.polys]
        return out


def regularity_check(inc: IncidenceSystem, eps0=None) -> RegularityResult:
    """Singular locus of the system at eps = eps0 is empty (Groebner basis {1})."""
    ideal = inc.ideal
    value = None
    if inc.perturbed:
        if eps0 is None:
            raise ValueError("a perturbed system needs an eps value")
        value = to_rational(eps0)
        if value < 0:
            raise ValueError("eps must be non-negative")
        ideal = instantiate(ideal, {EPS: value})
    names = ideal.ctx.names
    J = jacobian(list(ideal.generators), names) if ideal.generators else None
    gens = list(ideal.generators)
    if J is not None and J.rows <= J.cols:
        gens.extend(minor for minor in maximal_minors(J) if minor)
    basis = groebner(Ideal(ideal.ctx, tuple(gens)))
    if basis.is_unit:
        return RegularityResult(Regularity.REGULAR, value)
    logger.info("stratum r=%d iota=%s singular at eps=%s", inc.rank, list(inc.iota), value)
    return RegularityResult(Regularity.SINGULAR, value, basis)
