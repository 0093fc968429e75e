"""
DegSDP error hierarchy.

Every failure the package raises derives from DegSDPError so the CLI can map
it onto an exit code without catching unrelated exceptions.
"""

from typing import Optional


class DegSDPError(Exception):
    """Base class for all solver errors."""


# ------------------------------------------------------------------
# Algebra
# ------------------------------------------------------------------

class ContextMismatchError(DegSDPError):
    """Two polynomials live in different variable contexts."""


class NonSquareMatrixError(DegSDPError):
    """A square matrix was required."""


class ArityError(DegSDPError):
    """A univariate polynomial was required."""


class PolynomialSyntaxError(DegSDPError):
    """Text could not be parsed as a polynomial in the given context."""


# ------------------------------------------------------------------
# Instances and systems
# ------------------------------------------------------------------

class InstanceError(DegSDPError):
    """Malformed or inconsistent instance document."""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class StratumError(DegSDPError):
    """Rank r or row subset iota outside the admissible range."""


class ObjectiveLengthError(DegSDPError):
    """Objective has the wrong number of coefficients."""


class ZeroPointError(DegSDPError):
    """The cone test was called at a point where A(x) is not zero."""


# ------------------------------------------------------------------
# Elimination
# ------------------------------------------------------------------

class NotZeroDimensionalError(DegSDPError):
    """The ideal does not define a finite set."""


class NotCurveError(DegSDPError):
    """The ideal does not define a curve."""


class SeparatingFormError(DegSDPError):
    """No candidate linear form separated the solutions."""


# ------------------------------------------------------------------
# Solver
# ------------------------------------------------------------------

class GenericityFailure(DegSDPError):
    """The perturbation (or objective) is not generic for some stratum."""


class StratumTimeout(DegSDPError):
    """A stratum exceeded its time budget."""

    def __init__(self, rank: int, iota: tuple, budget: float):
        self.rank = rank
        self.iota = iota
        self.budget = budget
        super().__init__(f"stratum r={rank} iota={list(iota)} exceeded {budget:g}s")


class OracleError(DegSDPError):
    """The numeric oracle could not produce an estimate."""
