"""
DegSDP configuration: environment variables, optionally from a .env file.

    DSDP_WORKERS         worker processes for strata (0 = inline)
    DSDP_STRATUM_BUDGET  seconds per stratum before it is reported as timed out
    DSDP_MAX_RESEEDS     perturbation resamples after a genericity failure
    DSDP_SEED            seed of the first sampled perturbation
    DSDP_TRACE_DB        SQLite audit trail path (unset = no trail)
    DSDP_LOG_LEVEL       logging level name for the CLI
"""

import logging
import os
from dataclasses import dataclass
from typing import Optional

logger = logging.getLogger(__name__)

DEFAULT_WORKERS = 2
DEFAULT_STRATUM_BUDGET = 60.0
DEFAULT_MAX_RESEEDS = 5


@dataclass(frozen=True)
class Settings:
    workers: int = DEFAULT_WORKERS
    stratum_budget: float = DEFAULT_STRATUM_BUDGET
    max_reseeds: int = DEFAULT_MAX_RESEEDS
    seed: int = 0
    trace_db: Optional[str] = None
    log_level: str = "WARNING"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r (not an integer)", name, raw)
        return default


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r (not a number)", name, raw)
        return default
    if value <= 0:
        logger.warning("Ignoring %s=%r (must be positive)", name, raw)
        return default
    return value


def load_settings(dotenv: bool = True) -> Settings:
    """Read settings from the environment; a .env file is loaded first when present."""
    if dotenv:
        from dotenv import load_dotenv

        load_dotenv()

    return Settings(
        workers=max(0, _env_int("DSDP_WORKERS", DEFAULT_WORKERS)),
        stratum_budget=_env_float("DSDP_STRATUM_BUDGET", DEFAULT_STRATUM_BUDGET),
        max_reseeds=max(0, _env_int("DSDP_MAX_RESEEDS", DEFAULT_MAX_RESEEDS)),
        seed=_env_int("DSDP_SEED", 0),
        trace_db=os.getenv("DSDP_TRACE_DB") or None,
        log_level=os.getenv("DSDP_LOG_LEVEL", "WARNING").upper(),
    )
