"""SDP instances, exact spectrahedron membership and the degenerate zero-point case."""

from .psd import PSDCertificate, PSDVerdict, certificate_from_signs, matrix_certificate, psd_check
from .model import (
    EPS,
    DistanceObjective,
    ObjectiveForm,
    PerturbationMatrix,
    SymmetricPencil,
    parse_instance,
    parse_matrix_document,
    sample_perturbation,
    serialize_instance,
    x_names,
)
from .degenerate import ConeTestResult, ConeVerdict, cone_unboundedness_test, detect_zero_point, feasibility

__all__ = [
    "PSDCertificate",
    "PSDVerdict",
    "certificate_from_signs",
    "matrix_certificate",
    "psd_check",
    "EPS",
    "DistanceObjective",
    "ObjectiveForm",
    "PerturbationMatrix",
    "SymmetricPencil",
    "parse_instance",
    "parse_matrix_document",
    "sample_perturbation",
    "serialize_instance",
    "x_names",
    "ConeTestResult",
    "ConeVerdict",
    "cone_unboundedness_test",
    "detect_zero_point",
    "feasibility",
]
