"""Exact positive semidefiniteness from the signs of characteristic-polynomial coefficients."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence, Tuple

from degsdp.algebra.matrix import char_poly, rational_char_poly
from degsdp.algebra.poly import VarContext, sign, to_rational
from degsdp.errors import InstanceError

logger = logging.getLogger(__name__)


class PSDVerdict(Enum):
    PD = "PD"
    PSD = "PSD"
    NOT_PSD = "NOT_PSD"


@dataclass(frozen=True)
class PSDCertificate:
    """Verdict for A(x) with the signs of c_0..c_{m-1} of det(tI - A(x)) as witness."""

    point: Any
    verdict: PSDVerdict
    rank: int
    witness: Tuple[int, ...]

    @property
    def is_psd(self) -> bool:
        return self.verdict is not PSDVerdict.NOT_PSD

    @property
    def is_pd(self) -> bool:
        return self.verdict is PSDVerdict.PD

    @property
    def label(self) -> str:
        if self.verdict is PSDVerdict.PSD:
            return f"PSD_rank_{self.rank}"
        return self.verdict.value

    def to_json(self) -> dict:
        return {"verdict": self.label, "rank": self.rank, "witness": list(self.witness)}


def certificate_from_signs(point: Any, signs: Sequence[int]) -> PSDCertificate:
    """signs[k] = sign of c_k, k = 0..m-1 (c_m = 1 is implicit)."""
    m = len(signs)
    psd = all((-1) ** (m - k) * s >= 0 for k, s in enumerate(signs))
    zero_mult = next((k for k, s in enumerate(signs) if s), m)
    rank = m - zero_mult
    if not psd:
        verdict = PSDVerdict.NOT_PSD
    elif rank == m:
        verdict = PSDVerdict.PD
    else:
        verdict = PSDVerdict.PSD
    return PSDCertificate(point, verdict, rank, tuple(signs))


def matrix_certificate(matrix, point: Any = None) -> PSDCertificate:
    """Certificate for a constant rational symmetric matrix."""
    rows = matrix.tolist() if hasattr(matrix, "tolist") else matrix
    coeffs = rational_char_poly(rows)
    return certificate_from_signs(point, [sign(c) for c in coeffs[:-1]])


def psd_check(pencil, point) -> PSDCertificate:
    """Exact PSD verdict for A(point); ``point`` is a rational sequence or an AlgebraicPoint."""
    if hasattr(point, "sign_of"):
        names = tuple(point.param.ctx.names)
        if names != pencil.variables:
            raise InstanceError(f"point has coordinates {list(names)}, pencil has {list(pencil.variables)}", "point")
        coeffs = char_poly(pencil.poly_matrix(VarContext(names)))
        signs = [point.sign_of(c) for c in coeffs[:-1]]
        return certificate_from_signs(point, signs)
    values = tuple(to_rational(v) for v in point)
    if len(values) != pencil.n:
        raise InstanceError(f"point has {len(values)} coordinates, pencil has {pencil.n}", "point")
    return matrix_certificate(pencil.at(values), values)
