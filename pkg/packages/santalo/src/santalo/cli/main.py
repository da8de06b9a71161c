"""Command-line entry point: ``santalo <command> [flags]``.

Exit statuses:
    0  every check passed
    1  at least one check failed
    2  usage or configuration error
    3  a numerical error was raised during a check
"""

import argparse
import os
import sys
from pathlib import Path
from typing import Any

from santalo import __version__
from santalo.cli.artifacts import ArtifactWriter, RunManifest
from santalo.cli.settings import RunSettings, load_settings
from santalo.cli.suites import SUITES, SuiteContext
from santalo.commons.schema.errors import ErrorCode, ErrorPayload, SantaloError
from santalo.commons.telemetry.context import clear_context, new_run_id
from santalo.commons.telemetry.logging import configure_logging, get_logger
from santalo.commons.telemetry.tracing import init_tracer
from santalo.commons.time.utils import format_iso8601, now_utc, stopwatch

logger = get_logger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

COMMAND_HELP = {
    "rearrange": "equimeasurability, layer cake, Gaussian isoperimetry and Lipschitz preservation",
    "infconv": "level-set comparison of infimum convolutions, sublevel decomposition, cost transfer",
    "hj-compare": "Hopf-Lax comparison over a time grid",
    "legendre": "Legendre comparison, biconjugation, order reversal, unit-determinant equality",
    "polar": "polar and T-transform comparisons, level identity, set-level Santalo, polar complement",
    "transform-compare": "one transform comparison in dimension --n",
    "santalo-flow": "Bessel flow trace with mass, alpha(t) and PDE residuals",
    "extremize": "coordinate search for the radial extremizer",
    "verify-all": "every suite at its acceptance budget",
}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="key = value config file (flags win)")
    common.add_argument("--output-dir", type=Path, help="artifact directory (env SANTALO_OUTPUT_DIR)")
    common.add_argument("--seed", type=int, help="base seed of every instance generator")
    common.add_argument("--fast", action="store_true", default=None, help="divide instance budgets by 8")
    common.add_argument("--workers", type=int, help="threads for independent instances")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="logging level")
    common.add_argument(
        "--no-svg-timestamp",
        dest="svg_timestamp",
        action="store_false",
        default=None,
        help="omit the date from SVG metadata",
    )
    common.add_argument("--n", type=int, help="dimension")
    common.add_argument("--t", type=float, help="single Hopf-Lax time")
    common.add_argument("--lambda-grid", type=int, help="number of levels per comparison")
    common.add_argument("--instances", type=int, help="instances per property suite")
    common.add_argument("--profile", choices=["gaussian", "linear", "random"], help="initial flow profile")
    common.add_argument("--transform", choices=["legendre", "polar", "t"], help="transform")
    common.add_argument("--times", help="comma-separated flow times starting at 0")
    common.add_argument("--budget", type=int, help="extremizer evaluations per restart")
    common.add_argument("--restarts", type=int, help="extremizer restarts")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="santalo",
        description="Numerical checks of rearrangement inequalities and the Blaschke-Santalo flow.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = _common_flags()
    for name, text in COMMAND_HELP.items():
        commands.add_parser(name, parents=[common], help=text, description=text)
    return parser


def _flags(args: argparse.Namespace) -> dict[str, Any]:
    names = (
        "output_dir",
        "seed",
        "fast",
        "workers",
        "svg_timestamp",
        "n",
        "t",
        "lambda_grid",
        "instances",
        "profile",
        "transform",
        "times",
        "budget",
        "restarts",
    )
    flags = {name: getattr(args, name) for name in names}
    flags["telemetry__log_level"] = args.log_level
    return flags


def _fallback_dir(args: argparse.Namespace) -> Path:
    if args.output_dir is not None:
        return Path(args.output_dir)
    return Path(os.environ.get("SANTALO_OUTPUT_DIR", "santalo-out"))


def _config_failure(args: argparse.Namespace, error: SantaloError) -> int:
    print(f"santalo: {error.message}", file=sys.stderr)
    run_id = new_run_id()
    try:
        writer = ArtifactWriter(_fallback_dir(args))
        writer.write_json(
            "manifest.json",
            RunManifest(
                run_id=run_id,
                command=args.command,
                version=__version__,
                started_at=format_iso8601(now_utc()),
                exit_status=EXIT_USAGE,
                error=error.to_payload(run_id),
            ),
        )
    except OSError:
        logger.warning("manifest_unwritable dir=%s", _fallback_dir(args))
    finally:
        clear_context()
    return EXIT_USAGE


def run(command: str, settings: RunSettings) -> int:
    """Run one command with resolved settings; the manifest is written whatever happens."""
    run_id = new_run_id()
    writer = ArtifactWriter(settings.output_dir, settings.svg_timestamp)
    ctx = SuiteContext(settings, writer)
    manifest = RunManifest(
        run_id=run_id,
        command=command,
        version=__version__,
        started_at=format_iso8601(now_utc()),
        config=settings.resolved(),
        seeds=[settings.seed],
    )
    logger.info("run_start command=%s seed=%s output_dir=%s", command, settings.seed, settings.output_dir)
    status = EXIT_PASS
    try:
        with stopwatch(ctx.timings, "total"):
            SUITES[command](ctx)
        status = EXIT_PASS if all(record.verdict for record in ctx.records) else EXIT_FAIL
    except SantaloError as exc:
        logger.error("run_failed command=%s code=%s message=%s", command, exc.code.value, exc.message)
        manifest.error = exc.to_payload(run_id)
        status = EXIT_USAGE if exc.is_usage_error else EXIT_NUMERICAL
    except Exception as exc:
        logger.exception("run_crashed command=%s", command)
        manifest.error = ErrorPayload(code=ErrorCode.INTERNAL_ERROR, message=str(exc), run_id=run_id)
        status = EXIT_NUMERICAL
    finally:
        manifest.checks = ctx.records
        manifest.timings = ctx.timings
        manifest.artifacts = list(writer.written)
        manifest.exit_status = status
        writer.write_json("manifest.json", manifest)
        failed = [record.name for record in ctx.records if not record.verdict]
        logger.info("run_done command=%s status=%s checks=%s failed=%s", command, status, len(ctx.records), failed)
        clear_context()
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        settings = load_settings(_flags(args), args.config)
    except SantaloError as exc:
        return _config_failure(args, exc)

    configure_logging(settings.telemetry)
    if settings.telemetry.otel_enabled:
        init_tracer(settings.telemetry.service_name)
    return run(args.command, settings)


if __name__ == "__main__":
    sys.exit(main())
