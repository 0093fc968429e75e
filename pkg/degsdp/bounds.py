"""
Degree and complexity bounds for the rank strata.

p = r(m - r) is the number of free kernel entries, c = (m - r)(m + r + 1)/2
the number of incidence equations and N = c + n + p the number of unknowns of
the Lagrange system. The multilinear Bezout number of the three-block system
((eps, x), y, z) is read off P = (s1 + s2)^c (s2 + s3)^n (s1 + s3)^p.
"""

import functools
import logging
from dataclasses import asdict, dataclass
from math import comb
from typing import Dict, Iterable, List

from sympy import Poly, symbols

from degsdp.errors import StratumError

logger = logging.getLogger(__name__)


def _binom(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def _check(m: int, n: int, r: int) -> None:
    if m < 2 or not 1 <= r <= m - 1:
        raise StratumError(f"rank {r} outside 1..{m - 1}")
    if n < 1:
        raise StratumError("bounds need n >= 1")


def kernel_size(m: int, r: int) -> int:
    return r * (m - r)


def stratum_size(m: int, r: int) -> int:
    return (m - r) * (m + r + 1) // 2


def lagrange_size(m: int, n: int, r: int) -> int:
    return stratum_size(m, r) + n + kernel_size(m, r)


def _theta1_terms(m: int, n: int, r: int) -> List[int]:
    c, p = stratum_size(m, r), kernel_size(m, r)
    top = min(n - c + p, p)
    return [_binom(c, n - k) * _binom(n, c + k - p) * _binom(p, k) for k in range(0, top + 1)]


def theta1(m: int, n: int, r: int) -> int:
    """Multilinear Bezout number of the Lagrange system, by direct summation."""
    _check(m, n, r)
    return sum(_theta1_terms(m, n, r))


def curve_degree_bound(m: int, n: int, r: int) -> int:
    return (1 + 2 * kernel_size(m, r)) * theta1(m, n, r)


@functools.lru_cache(maxsize=None)
def bezout_coefficients(m: int, n: int, r: int) -> Dict[str, int]:
    """theta1..theta3 as coefficients of P (independent of the summation)."""
    _check(m, n, r)
    c, p = stratum_size(m, r), kernel_size(m, r)
    s1, s2, s3 = symbols("s1 s2 s3")
    P = Poly((s1 + s2) ** c * (s2 + s3) ** n * (s1 + s3) ** p, s1, s2, s3)

    def coeff(a: int, b: int, d: int) -> int:
        if min(a, b, d) < 0:
            return 0
        return int(P.coeff_monomial(s1 ** a * s2 ** b * s3 ** d))

    return {
        "theta1": coeff(n, p, c),
        "theta2": coeff(n + 1, p - 1, c),
        "theta3": coeff(n + 1, p, c - 1),
    }


def theta2(m: int, n: int, r: int) -> int:
    return bezout_coefficients(m, n, r)["theta2"]


def theta3(m: int, n: int, r: int) -> int:
    return bezout_coefficients(m, n, r)["theta3"]


def multilinear_bezout_bound(m: int, n: int, r: int) -> int:
    """theta1 + theta2 + theta3, the degree count before the curve bound is applied."""
    coeffs = bezout_coefficients(m, n, r)
    return coeffs["theta1"] + coeffs["theta2"] + coeffs["theta3"]


def theta_hns(m: int, n: int, r: int) -> int:
    """((c + n) choose n)^3."""
    _check(m, n, r)
    return comb(stratum_size(m, r) + n, n) ** 3


def theta_hns_cap(m: int, n: int) -> int:
    """((m^2 + n) choose n)^3, uniform over the strata."""
    if n < 1:
        raise StratumError("bounds need n >= 1")
    return comb(m * m + n, n) ** 3


def theta_hns_summation(m: int, n: int, r: int) -> int:
    """sum_k a_k with a_k = C(c, n-k) C(n-1, c+k-p-1) C(p, k); theta1 <= n times this."""
    _check(m, n, r)
    c, p = stratum_size(m, r), kernel_size(m, r)
    top = min(n - c + p, p)
    return sum(
        _binom(c, n - k) * _binom(n - 1, c + k - p - 1) * _binom(p, k) for k in range(0, top + 1)
    )


def complexity_estimate(m: int, n: int) -> int:
    """n * sum_r C(m, r) r(m-r) N^4 theta^2 (reported, never measured)."""
    if n < 1:
        raise StratumError("bounds need n >= 1")
    total = 0
    for r in range(1, m):
        N = lagrange_size(m, n, r)
        total += comb(m, r) * kernel_size(m, r) * N ** 4 * theta_hns(m, n, r) ** 2
    return n * total


@dataclass(frozen=True)
class StratumBounds:
    m: int
    n: int
    r: int
    c: int
    N: int
    theta1: int
    multilinear: int
    curve_bound: int
    theta_hns: int
    theta_sum: int
    comparison_bound: int

    @property
    def within_size_cap(self) -> bool:
        return self.N <= self.n + 2 * self.m * self.m

    def to_json(self) -> dict:
        return asdict(self)


def stratum_bounds(m: int, n: int, r: int) -> StratumBounds:
    t1 = theta1(m, n, r)
    th = theta_hns(m, n, r)
    factor = 1 + 2 * kernel_size(m, r)
    return StratumBounds(
        m=m,
        n=n,
        r=r,
        c=stratum_size(m, r),
        N=lagrange_size(m, n, r),
        theta1=t1,
        multilinear=multilinear_bezout_bound(m, n, r),
        curve_bound=factor * t1,
        theta_hns=th,
        theta_sum=theta_hns_summation(m, n, r),
        comparison_bound=factor * n * th,
    )


def bound_table(ms: Iterable[int], ns: Iterable[int]) -> List[StratumBounds]:
    ns = list(ns)
    rows = []
    for m in ms:
        for n in ns:
            for r in range(1, m):
                rows.append(stratum_bounds(m, n, r))
    logger.debug("bound table with %d rows", len(rows))
    return rows
