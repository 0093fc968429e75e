"""Incidence varieties and Lagrange systems of the rank strata."""

from .incidence import (
    IncidenceSystem,
    Regularity,
    RegularityResult,
    build_incidence,
    build_unreduced_incidence,
    multidegree,
    regularity_check,
    stratum_size,
    validate_stratum,
    y_name,
)
from .lagrange import LagrangeSystem, build_lagrange, dump_system, lagrange_size, z_names

__all__ = [
    "IncidenceSystem",
    "Regularity",
    "RegularityResult",
    "build_incidence",
    "build_unreduced_incidence",
    "multidegree",
    "regularity_check",
    "stratum_size",
    "validate_stratum",
    "y_name",
    "LagrangeSystem",
    "build_lagrange",
    "dump_system",
    "lagrange_size",
    "z_names",
]
