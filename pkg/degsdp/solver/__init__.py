"""Homotopy solver over the rank strata, its report types and the numeric oracle."""

from .homotopy import (
    StratumOutcome,
    candidates_of,
    degenerate_sdp,
    find_feasible_point,
    run_strata,
    select_minimizer,
    solve_async,
    solve_stratum,
    strata,
)
from .oracle import OracleEstimate, oracle_minimize
from .report import (
    OBJECTIVE_DELTA,
    Candidate,
    MinimizerCertificate,
    SolveConfig,
    SolveReport,
    SolveStatus,
    StratumRecord,
    StratumStatus,
)
from .steps import (
    EPS_LADDER,
    GenericityReport,
    critical_ideal,
    cut,
    finite_fiber,
    genericity_diagnostics,
    odp,
    rank_branches,
    union,
    union_all,
)

__all__ = [
    "StratumOutcome",
    "candidates_of",
    "degenerate_sdp",
    "find_feasible_point",
    "run_strata",
    "select_minimizer",
    "solve_async",
    "solve_stratum",
    "strata",
    "OracleEstimate",
    "oracle_minimize",
    "OBJECTIVE_DELTA",
    "Candidate",
    "MinimizerCertificate",
    "SolveConfig",
    "SolveReport",
    "SolveStatus",
    "StratumRecord",
    "StratumStatus",
    "EPS_LADDER",
    "GenericityReport",
    "critical_ideal",
    "cut",
    "finite_fiber",
    "genericity_diagnostics",
    "odp",
    "rank_branches",
    "union",
    "union_all",
]
