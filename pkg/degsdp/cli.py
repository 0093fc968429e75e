"""
DegSDP command line.

    python -m degsdp solve INSTANCE [--perturbation-file B.json] [--output PATH]
    python -m degsdp verify INSTANCE POINT
    python -m degsdp bounds [--m 2 3] [--n 1 2]
    python -m degsdp oracle INSTANCE
    python -m degsdp example [--identity]
    python -m degsdp trace [--run ID | --stage NAME] [--since DATE] [--until DATE]

Exit codes: 0 ok, 2 usage or parse error, 3 unbounded below, 4 empty or
unbounded (verify: point infeasible), 5 genericity failure, 6 stratum
timeout, 7 oracle found no bounded estimate.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Union

from degsdp import __version__
from degsdp.algebra.poly import MPoly, VarContext, parse_poly, rational_text, to_rational
from degsdp.algebra.univariate import count_real_roots
from degsdp.bounds import bound_table, complexity_estimate
from degsdp.config import Settings, load_settings
from degsdp.elimination.params import PARAM, T_CTX, ZeroDimParam
from degsdp.elimination.realroots import AlgebraicNumber, AlgebraicPoint
from degsdp.errors import DegSDPError, InstanceError
from degsdp.pencil.model import SymmetricPencil, parse_instance, parse_matrix_document
from degsdp.pencil.psd import psd_check
from degsdp.solver.homotopy import degenerate_sdp
from degsdp.solver.oracle import oracle_minimize
from degsdp.solver.report import SolveConfig, SolveStatus
from degsdp.trace_logger import TraceLogger
from degsdp.walkthrough import walkthrough

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNBOUNDED = 3
EXIT_EMPTY = 4
EXIT_GENERICITY = 5
EXIT_TIMEOUT = 6
EXIT_ORACLE = 7

STATUS_EXIT = {
    SolveStatus.SOLVED: EXIT_OK,
    SolveStatus.ZERO_POINT_VERTEX: EXIT_OK,
    SolveStatus.UNBOUNDED_BELOW: EXIT_UNBOUNDED,
    SolveStatus.EMPTY_OR_UNBOUNDED: EXIT_EMPTY,
    SolveStatus.GENERICITY_FAILURE: EXIT_GENERICITY,
    SolveStatus.STRATUM_TIMEOUT: EXIT_TIMEOUT,
}


# ------------------------------------------------------------------
# Input helpers
# ------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(args: argparse.Namespace, payload: Any, text: str):
    out = text if args.text else json.dumps(payload, ensure_ascii=False, indent=2)
    output = getattr(args, "output", None)
    if output:
        Path(output).write_text(out + "\n", encoding="utf-8")
        logger.info("wrote %s", output)
    else:
        print(out)


def _poly_in(text: str, ctx: VarContext) -> MPoly:
    return parse_poly(str(text), ctx)


def _as_t(p: MPoly) -> MPoly:
    return MPoly.from_exponents(T_CTX, dict(p.exponent_terms()))


def _root(doc: Mapping[str, Any], variable: str, field: str) -> AlgebraicNumber:
    for key in ("polynomial", "interval"):
        if key not in doc:
            raise InstanceError("missing field", f"{field}.{key}")
    poly = _as_t(_poly_in(doc["polynomial"], VarContext((variable,))))
    lo, hi = (to_rational(v) for v in doc["interval"])
    if lo > hi or count_real_roots(poly, lo, hi) != 1:
        raise InstanceError("interval must isolate exactly one real root", f"{field}.interval")
    return AlgebraicNumber(poly, lo, hi)


def load_point(document: Union[str, Mapping, list], pencil: SymmetricPencil):
    """Rational coordinates, a minimizer document (parametrization + root) or, for n = 1, a root."""
    doc = json.loads(document) if isinstance(document, str) else document
    if isinstance(doc, Mapping):
        doc = doc.get("minimizer", doc)
        doc = doc.get("point", doc) if isinstance(doc, Mapping) else doc
    if doc is None:
        raise InstanceError("no point in document", "point")

    ctx = VarContext(pencil.variables)
    if isinstance(doc, Mapping) and "parametrization" in doc and "root" in doc:
        par = doc["parametrization"]
        param = ZeroDimParam(
            ctx,
            _poly_in(par["q"], T_CTX),
            _poly_in(par["q0"], T_CTX),
            tuple(_poly_in(c, T_CTX) for c in par["coordinates"]),
            tuple(to_rational(c) for c in par["separating_form"]),
        )
        if len(param.coords) != pencil.n:
            raise InstanceError(f"expected {pencil.n} coordinates", "point.parametrization")
        return AlgebraicPoint(param, _root(doc["root"], PARAM, "point.root"))

    if not isinstance(doc, list) or len(doc) != pencil.n:
        raise InstanceError(f"expected a list of {pencil.n} coordinates", "point")
    if pencil.n == 1 and isinstance(doc[0], Mapping):
        root = _root(doc[0], doc[0].get("variable", "v"), "point[0]")
        param = ZeroDimParam(ctx, root.poly, T_CTX.one, (T_CTX.gen(PARAM),), (to_rational(1),))
        return AlgebraicPoint(param, root)
    try:
        return tuple(to_rational(v) for v in doc)
    except ValueError as exc:
        raise InstanceError(str(exc), "point") from None


def _config(args: argparse.Namespace, settings: Settings, **extra) -> SolveConfig:
    return SolveConfig.from_settings(
        settings,
        workers=args.workers,
        stratum_budget=args.budget,
        seed=args.seed,
        trace_db=args.trace_db,
        **extra,
    )


# ------------------------------------------------------------------
# Commands
# ------------------------------------------------------------------

def cmd_solve(args: argparse.Namespace, settings: Settings) -> int:
    pencil, objective = parse_instance(_read(args.instance))
    perturbation = None
    if args.perturbation_file:
        perturbation = parse_matrix_document(_read(args.perturbation_file), pencil.m)
    config = _config(
        args, settings,
        perturbation=perturbation,
        max_rank=args.max_rank,
        short_circuit=not args.no_short_circuit,
        allow_objective_perturbation=args.allow_objective_perturbation or None,
    )
    report = degenerate_sdp(pencil, objective, config)
    _emit(args, report.to_json(), report.summary())
    return STATUS_EXIT[report.status]


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    pencil, objective = parse_instance(_read(args.instance))
    point = load_point(_read(args.point), pencil)
    cert = psd_check(pencil, point)
    if isinstance(point, AlgebraicPoint):
        value = point.value_of(objective.as_poly(point.param.ctx))
        value_doc = value.to_json()
        value_text = f"{value.approx():.10g} [{value.poly.to_text()} = 0]"
    else:
        exact = objective.value(point)
        value_doc = rational_text(exact)
        value_text = value_doc
    payload = {"feasible": cert.is_psd, "psd": cert.to_json(), "objective": value_doc}
    text = f"{'feasible' if cert.is_psd else 'infeasible'}: {cert.label} (rank {cert.rank})\nobjective: {value_text}"
    _emit(args, payload, text)
    return EXIT_OK if cert.is_psd else EXIT_EMPTY


def cmd_bounds(args: argparse.Namespace, settings: Settings) -> int:
    rows = bound_table(args.m, args.n)
    estimates = {f"m={m},n={n}": complexity_estimate(m, n) for m in args.m for n in args.n}
    payload = {"strata": [r.to_json() for r in rows], "complexity_estimate": estimates}
    header = f"{'m':>2} {'n':>2} {'r':>2} {'c':>3} {'N':>3} {'theta1':>8} {'curve':>9} {'theta_hns':>12} {'n*theta':>8}"
    lines = [header]
    for r in rows:
        lines.append(
            f"{r.m:>2} {r.n:>2} {r.r:>2} {r.c:>3} {r.N:>3} {r.theta1:>8} {r.curve_bound:>9} "
            f"{r.theta_hns:>12} {r.n * r.theta_sum:>8}"
        )
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, settings: Settings) -> int:
    pencil, objective = parse_instance(_read(args.instance))
    estimate = oracle_minimize(pencil, objective, box=args.box)
    if estimate.value is None:
        text = "no feasible sample found"
    elif estimate.possibly_unbounded:
        text = f"possibly unbounded (best {estimate.value:.10g} on box {estimate.box:g})"
    else:
        text = f"estimate {estimate.value:.10g} at {list(estimate.point)} (not certified)"
    _emit(args, estimate.to_json(), text)
    return EXIT_OK if estimate.found else EXIT_ORACLE


def cmd_example(args: argparse.Namespace, settings: Settings) -> int:
    lines = walkthrough(identity=args.identity, config=_config(args, settings))
    print("\n".join(lines))
    return EXIT_OK


def cmd_trace(args: argparse.Namespace, settings: Settings) -> int:
    path = args.trace_db or settings.trace_db
    if not path:
        raise InstanceError("no trace database: pass --trace-db or set DSDP_TRACE_DB")
    if not Path(path).exists():
        raise InstanceError(f"trace database {path} does not exist")
    tracer = TraceLogger(path)
    try:
        if args.since or args.until:
            # "~" sorts after every timestamp character, so --until is prefix-inclusive
            rows = tracer.by_date_range(args.since or "", (args.until or "9999") + "~")
        elif args.stage:
            rows = tracer.by_stage(args.stage, args.limit)
        elif args.run:
            rows = json.loads(tracer.export_json(args.run))
        else:
            rows = tracer.get_recent(args.limit)
    finally:
        tracer.close()
    lines = [
        f"{r['run_id']} {r['timestamp']} {r['stage']:<10} {r['status']}"
        + (f" r={r['rank']} iota={r['iota']}" if r['rank'] is not None else "")
        for r in rows
    ]
    _emit(args, rows, "\n".join(lines) if lines else "no trace records")
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], int]] = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "oracle": cmd_oracle,
    "example": cmd_example,
    "trace": cmd_trace,
}


# ------------------------------------------------------------------
# Parser
# ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="degsdp", description="Exact solver for degenerate SDPs")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--trace-db", help="SQLite audit trail (overrides DSDP_TRACE_DB)")
    parser.add_argument("--workers", type=int, help="worker processes, 0 = inline (overrides DSDP_WORKERS)")
    parser.add_argument("--budget", type=float, help="seconds per stratum (overrides DSDP_STRATUM_BUDGET)")
    parser.add_argument("--seed", type=int, help="perturbation seed (overrides DSDP_SEED)")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="text", action="store_false", help="JSON output (default)")
    mode.add_argument("--text", dest="text", action="store_true", help="human-readable output")
    parser.set_defaults(text=False)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimize the objective over the spectrahedron")
    p.add_argument("instance")
    p.add_argument("--perturbation-file", help="explicit positive definite B")
    p.add_argument("--max-rank", type=int)
    p.add_argument("--no-short-circuit", action="store_true", help="skip the zero-point test")
    p.add_argument("--allow-objective-perturbation", action="store_true")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")

    p = sub.add_parser("verify", help="exact PSD test and objective value at a point")
    p.add_argument("instance")
    p.add_argument("point")

    p = sub.add_parser("bounds", help="degree bounds per stratum")
    p.add_argument("--m", type=int, nargs="+", default=[2, 3, 4, 5])
    p.add_argument("--n", type=int, nargs="+", default=[1, 2, 3])

    p = sub.add_parser("oracle", help="floating-point estimate (not certified)")
    p.add_argument("instance")
    p.add_argument("--box", type=float, default=10.0)

    p = sub.add_parser("example", help="walk through the degenerate 2x2 example")
    p.add_argument("--identity", action="store_true", help="only the B = I variant")

    p = sub.add_parser("trace", help="query the SQLite audit trail")
    query = p.add_mutually_exclusive_group()
    query.add_argument("--run", help="every record of one run, in order")
    query.add_argument("--stage", help="latest records of one stage (zero_point, stratum, reseed, select)")
    p.add_argument("--since", help="ISO date or timestamp lower bound")
    p.add_argument("--until", help="ISO date or timestamp upper bound, prefix-inclusive")
    p.add_argument("--limit", type=int, default=10)
    return parser


def _configure_logging(settings: Settings, verbose: int):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(format=LOG_FORMAT, level=level)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = load_settings()
    _configure_logging(settings, args.verbose)
    try:
        return COMMANDS[args.command](args, settings)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegSDPError, ValueError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
