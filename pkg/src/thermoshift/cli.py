"""
Command-line interface for thermoshift.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import structlog
from pydantic import ValidationError
from rich.console import Console

from .commands.base import CommandResult, RunConfig
from .commands.registry import CommandRegistry, get_command_registry
from .config import get_settings
from .formats import emit_series, write_json

logger = structlog.get_logger()

console = Console(stderr=True)


def configure_logging(level: str = "WARNING") -> None:
    """Route structlog through stdlib logging to stderr at the given level."""
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(message)s",
        force=True,
    )
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()),
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    settings = get_settings()
    parser.add_argument(
        "--n-max", dest="n_max", type=int, help=f"Largest word length (default: {settings.n_max})"
    )
    parser.add_argument(
        "--tol", type=float, help=f"Eigenvalue residual tolerance (default: {settings.rpf_tol:g})"
    )
    parser.add_argument("--seed", type=int, help=f"Random seed (default: {settings.seed})")
    parser.add_argument(
        "--threads",
        type=int,
        help=f"Worker threads for the variational restarts (default: {settings.threads})",
    )
    parser.add_argument(
        "--max-words",
        dest="max_words",
        type=int,
        help=(
            f"Word enumeration budget (default: {settings.max_words}; "
            f"bimodule-pressure caps it at {settings.bimodule_max_words})"
        ),
    )
    parser.add_argument(
        "--format", choices=["json", "csv"], help="Report format (default: json)"
    )
    parser.add_argument("--out", type=Path, help="Output file (default: stdout)")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")


def build_parser(registry: CommandRegistry | None = None) -> argparse.ArgumentParser:
    registry = registry or get_command_registry()
    parser = argparse.ArgumentParser(
        prog="thermoshift",
        description="Thermodynamic formalism for Markov subshifts and Cuntz-Krieger type systems",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    for name in registry.list_commands():
        command = registry.get(name)
        assert command is not None
        sub = subparsers.add_parser(name, help=command.description, description=command.description)
        command.add_arguments(sub)
        _add_common_arguments(sub)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """RunConfig from parsed flags; unset flags fall back to the settings."""
    values: dict[str, Any] = {k: v for k, v in vars(args).items() if v is not None}
    return RunConfig(**values)


def _write(config: RunConfig, result: CommandResult) -> int:
    if config.format == "csv":
        if result.series is None:
            console.print(
                f"error: {config.command} has no data series; use --format json",
                style="red",
                markup=False,
                highlight=False,
            )
            return 1

    def emit(out: Any) -> None:
        if config.format == "csv":
            rows = emit_series(result.series, out)
            logger.debug("Series written", rows=rows)
        else:
            assert result.report is not None
            write_json(result.report, out)

    try:
        if config.out is None:
            emit(sys.stdout)
        else:
            with config.out.open("w", encoding="utf-8", newline="") as out:
                emit(out)
    except OSError as e:
        console.print(f"error: cannot write output: {e}", style="red", markup=False, highlight=False)
        return 1
    return 0


def run(config: RunConfig) -> int:
    """Execute one command and write its report; returns the exit status."""
    result = get_command_registry().execute(config)

    if not result.success:
        console.print(f"error: {result.error}", style="red", markup=False, highlight=False)
        return result.exit_code or 1

    for line in result.diagnostics:
        console.print(line, markup=False, highlight=False)
    return _write(config, result)


def main(argv: Sequence[str] | None = None) -> None:
    """Main entry point for the CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        sys.exit(0)

    level = "DEBUG" if args.verbose else get_settings().log
    configure_logging(level)

    try:
        config = config_from_args(args)
    except ValidationError as e:
        for error in e.errors():
            where = ".".join(str(p) for p in error["loc"])
            console.print(f"error: {where}: {error['msg']}", style="red", markup=False, highlight=False)
        sys.exit(1)

    sys.exit(run(config))


if __name__ == "__main__":
    main()
