"""Command-line entry point: ``wrdea run`` and ``wrdea check``.

Exit codes: 0 success, 1 validation error (or a failed check), 2 internal error.
"""
import argparse
from dataclasses import dataclass
import logging
from pathlib import Path
import sys

from ._base import DEFAULT_TOL, StructuralError, Tolerances, WrdeaError
from .data import WeightRestrictions, compile_restrictions
from .io import parse_dataset, parse_restrictions, write_report
from .pipeline import RunOptions, run_all

logger = logging.getLogger("wrdea")

EXIT_OK, EXIT_VALIDATION, EXIT_INTERNAL = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    data_path: Path
    output_path: Path
    restrictions_path: Path = None
    output_format: str = "json"
    tolerances: Tolerances = DEFAULT_TOL
    force_grs: bool = False
    seed: int = 0

    def __post_init__(self):
        for name in ("data_path", "output_path"):
            if not str(getattr(self, name) or "").strip():
                raise StructuralError(f"{name} must be a nonempty path")
        if self.restrictions_path is not None and not str(self.restrictions_path).strip():
            raise StructuralError("restrictions_path must be a nonempty path when given")
        if self.output_format not in ("json", "csv"):
            raise StructuralError(f"output_format must be 'json' or 'csv', got {self.output_format!r}")


def execute(config):
    """Parse inputs, run the pipeline and write the report; returns the reports."""
    instance = parse_dataset(config.data_path)
    if config.restrictions_path is None:
        wr = WeightRestrictions.none(instance.m, instance.s)
    else:
        specs = parse_restrictions(config.restrictions_path, instance.m, instance.s)
        wr = compile_restrictions(specs, instance.m, instance.s)
    reports = run_all(instance, wr, config.tolerances, RunOptions(force_grs=config.force_grs))
    write_report(reports, config.output_format, config.output_path)
    return reports


def _add_tolerance_args(p):
    p.add_argument("--tol-feas", type=float, default=DEFAULT_TOL.feas)
    p.add_argument("--tol-opt", type=float, default=DEFAULT_TOL.opt)
    p.add_argument("--tol-class", type=float, default=DEFAULT_TOL.classification)
    p.add_argument("--tol-support", type=float, default=DEFAULT_TOL.support)
    p.add_argument("--tol-sign", type=float, default=DEFAULT_TOL.sign)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wrdea", description="Returns to scale under weight restrictions in DEA.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="analyze a dataset and write a report")
    run.add_argument("--data", required=True, help="CSV file with header dmu,x1..xm,y1..ys")
    run.add_argument("--restrictions", help="JSON array of homogeneous weight restrictions")
    run.add_argument("--out", required=True, help="report path")
    run.add_argument("--format", choices=("json", "csv"), default=None,
                     help="report format (default: from the --out suffix, else json)")
    run.add_argument("--force-grs", action="store_true",
                     help="compute the global reference set for every DMU")
    run.add_argument("--seed", type=int, default=0)
    _add_tolerance_args(run)

    check = sub.add_parser("check", help="run the oracle-backed property suite")
    check.add_argument("--seed", type=int, default=0, help="seed for random objectives")
    check.add_argument("--battery-seed", type=int, default=7)
    check.add_argument("--size", type=int, default=36, help="number of battery instances")
    check.add_argument("--objectives", type=int, default=50,
                       help="random objectives per DMU for the maximality check")
    _add_tolerance_args(check)
    return parser


def _tolerances(args):
    return Tolerances(feas=args.tol_feas, opt=args.tol_opt, classification=args.tol_class,
                      support=args.tol_support, sign=args.tol_sign)


def _cmd_run(args):
    fmt = args.format
    if fmt is None:
        fmt = "csv" if Path(args.out).suffix.lower() == ".csv" else "json"
    config = RunConfig(
        data_path=Path(args.data), output_path=Path(args.out),
        restrictions_path=None if args.restrictions is None else Path(args.restrictions),
        output_format=fmt, tolerances=_tolerances(args), force_grs=args.force_grs,
        seed=args.seed)
    reports = execute(config)
    failed = [r for r in reports if not r.ok]
    for rep in failed:
        print(f"error: DMU {rep.label}: {rep.error}", file=sys.stderr)
    logger.info("wrote %d reports to %s", len(reports), config.output_path)
    return EXIT_INTERNAL if failed else EXIT_OK


def _cmd_check(args):
    from .battery import build_battery
    from .checks import run_checks

    cases = build_battery(seed=args.battery_seed, size=args.size)
    results = run_checks(cases, seed=args.seed, tol=_tolerances(args), count=args.objectives)
    for res in results:
        flag = "PASS" if res.passed else "FAIL"
        print(f"{flag} {res.name} ({len(cases)} instances, {res.seconds:.2f}s)")
        for v in res.violations[:10]:
            print(f"    {v}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_check(args)
    except (StructuralError, ValueError) as exc:
        # bad files, bad dimensions, nonpositive tolerances
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except WrdeaError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        logger.debug("unexpected failure", exc_info=True)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
