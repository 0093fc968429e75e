"""Exact rational arithmetic, sparse polynomials and polynomial matrices."""

from .poly import MPoly, Monomial, VarContext, parse_poly, poly_arith, rational_text, to_rational
from .matrix import (
    PolyMatrix,
    char_poly,
    determinant,
    jacobian,
    maximal_minors,
    minors,
    principal_minor_sums,
    rational_char_poly,
)
from .univariate import (
    count_real_roots,
    derivative,
    poly_gcd,
    resultant,
    squarefree_part,
    univariate_tools,
)

__all__ = [
    "MPoly",
    "Monomial",
    "VarContext",
    "parse_poly",
    "poly_arith",
    "rational_text",
    "to_rational",
    "PolyMatrix",
    "char_poly",
    "determinant",
    "jacobian",
    "maximal_minors",
    "minors",
    "principal_minor_sums",
    "rational_char_poly",
    "count_real_roots",
    "derivative",
    "poly_gcd",
    "resultant",
    "squarefree_part",
    "univariate_tools",
]
