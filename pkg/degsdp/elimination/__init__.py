"""Groebner elimination, rational parametrizations and real algebraic numbers."""

from .ideal import (
    EMPTY,
    GroebnerBasis,
    Ideal,
    contains,
    dimension,
    eliminate,
    groebner,
    horizontal_part,
    instantiate,
    intersect,
    product,
    same_ideal,
    saturate,
)
from .params import (
    PARAM,
    T_CTX,
    OneDimParam,
    ZeroDimParam,
    homogenized_numerator,
    one_dim_param,
    separating_candidates,
    zero_dim_param,
)
from .realroots import (
    AlgebraicNumber,
    AlgebraicPoint,
    algebraic_value,
    isolate_real_roots,
    real_points,
    sign_at,
)

__all__ = [
    "EMPTY",
    "GroebnerBasis",
    "Ideal",
    "contains",
    "dimension",
    "eliminate",
    "groebner",
    "horizontal_part",
    "instantiate",
    "intersect",
    "product",
    "same_ideal",
    "saturate",
    "PARAM",
    "T_CTX",
    "OneDimParam",
    "ZeroDimParam",
    "homogenized_numerator",
    "one_dim_param",
    "separating_candidates",
    "zero_dim_param",
    "AlgebraicNumber",
    "AlgebraicPoint",
    "algebraic_value",
    "isolate_real_roots",
    "real_points",
    "sign_at",
]
