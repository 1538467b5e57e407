#!/usr/bin/env python3
"""
infodist command line.

Usage:
    python -m infodist validate   --config job.json
    python -m infodist tradeoff   --config job.json --out report.json
    python -m infodist scan       --config scan.json --format csv --out scan.csv
    python -m infodist divergence --config pairs.json --trials 100
    python -m infodist randsuite  --seed 7 --workers 4

Exit codes: 0 every asserted check passed, 1 an assertion failed or the
computation raised, 2 usage or schema error.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from infodist.config import config
from infodist.errors import ConfigError, InfodistError, UnknownMetric
from infodist.cli.commands import COMMANDS, CommandResult, JobContext
from infodist.cli.jobs import build_tolerances, load_job
from infodist.cli.reports import config_hash, render_csv, render_json, write_text
from infodist.utils.logging import cli_logger as logger
from infodist.utils.logging import get_log_buffer

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infodist",
        description="Certify information–disturbance tradeoffs of quantum measurements",
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="What to run")
    parser.add_argument("--config", "-c", default=None, help="JSON job config")
    parser.add_argument("--seed", type=int, default=None, help="Override the config seed")
    parser.add_argument("--trials", type=int, default=None, help="Trial count (per campaign for randsuite)")
    parser.add_argument("--out", "-o", default=None, help="Report path (stdout when absent)")
    parser.add_argument("--format", choices=["json", "csv"], default=None, help="Report format")
    parser.add_argument("--tol", type=float, default=None, help="Override the PSD verdict tolerance")
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"Threads for independent trials (default: {config.DEFAULT_WORKERS})",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    parser.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)
    return parser


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, config.LOG_LEVEL)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _envelope(command: str, ctx: JobContext, result: CommandResult) -> Dict[str, Any]:
    effective = ctx.job.model_dump(mode="json")
    effective.update({
        "command": command,
        "seed": ctx.seed,
        "trials": ctx.trials,
        "tolerances": ctx.tol.model_dump(),
        "inject_bug": ctx.inject_bug,
    })
    effective.pop("workers", None)
    effective.pop("output", None)
    return {
        "command": command,
        "config_hash": config_hash(effective),
        "seed": ctx.seed,
        "trials": ctx.trials,
        "tolerances": ctx.tol.model_dump(),
        "passed": result.passed,
        "results": result.payload,
    }


def _emit(command: str, ctx: JobContext, result: CommandResult, out: Optional[str],
          fmt: str, csv_path: Optional[str]) -> None:
    if fmt == "csv":
        write_text(render_csv(result.table), out)
    else:
        write_text(render_json(_envelope(command, ctx, result), config.REPORT_INDENT), out)
        if csv_path is not None:
            write_text(render_csv(result.table), csv_path)


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    get_log_buffer().clear()

    try:
        job, _ = load_job(args.config)
        if job.command is not None and job.command != args.command:
            raise ConfigError(f"Config is for '{job.command}', not '{args.command}'")
        if args.trials is not None and args.trials < 1:
            raise ConfigError("--trials must be ≥ 1")
        if args.workers is not None and args.workers < 1:
            raise ConfigError("--workers must be ≥ 1")
        ctx = JobContext(
            job=job,
            tol=build_tolerances(job, args.tol),
            seed=args.seed if args.seed is not None else job.seed,
            trials=args.trials if args.trials is not None else job.trials,
            workers=args.workers or job.workers or config.DEFAULT_WORKERS,
            inject_bug=args.inject_bug,
        )
        logger.info("Running command", command=args.command, seed=ctx.seed, trials=ctx.trials)
        result = COMMANDS[args.command](ctx)
        _emit(
            args.command,
            ctx,
            result,
            args.out or job.output.path,
            args.format or job.output.format,
            job.output.csv_path,
        )
    except (ConfigError, UnknownMetric, ValidationError) as e:
        logger.error("Usage error", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InfodistError as e:
        logger.error("Computation failed", command=args.command, error=f"{type(e).__name__}: {e}")
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL

    warnings, errors = get_log_buffer().tally()
    verdict = "PASS" if result.passed else "FAIL"
    print(
        f"{args.command}: {verdict} ({warnings} warnings, {errors} errors logged)",
        file=sys.stderr,
    )
    return EXIT_PASS if result.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
