#!/usr/bin/env python3
"""
TeleBell - Bell teleportation inequality analysis

Main entry point for the TeleBell command line.
Analyzes two-qubit teleportation channels, scans the D_{lambda,alpha}
family and runs the verification suites.

Usage:
    python main.py analyze --state <spec> [--starts N] [--grid-floor R] [--json PATH]
    python main.py scan --lambda a:b:step --alpha a:b:step --out PATH.csv
    python main.py verify <suite> [--seed S] [--trials N]

Exit codes: 0 ok, 1 verification failure, 2 parse error,
3 invalid state, 4 unwritable output.
"""

import asyncio
import argparse
import sys
from pathlib import Path
from typing import List, Optional

import yaml
from pydantic import ValidationError

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent))

from src import __version__
from src.config.constants import ExitCode, VerifySuite
from src.config.settings import LoggingSettings, Settings
from src.core.exceptions import (
    GridSpecError,
    ReportOutputError,
    StateSpecError,
    StateValidationError,
)
from src.commands import cmd_analyze, cmd_scan, cmd_verify
from src.utils.logger import setup_logger, get_logger


class TeleBellApp:
    """Main application class for TeleBell."""

    def __init__(self, config_file: str = "config.yaml"):
        """Initialize the application."""
        self.config_file = config_file
        self.settings: Optional[Settings] = None
        self.logger = None

    def initialize(self, log_level: Optional[str] = None) -> bool:
        """Load settings and set up logging."""
        try:
            self.settings = Settings.load_from_file(self.config_file)
            if log_level:
                logging_settings = LoggingSettings(**{**self.settings.logging.model_dump(), "level": log_level})
                self.settings = self.settings.model_copy(update={"logging": logging_settings})
        except (ValidationError, ValueError, yaml.YAMLError) as e:
            print(f"Error: invalid configuration in '{self.config_file}': {e}", file=sys.stderr)
            return False

        setup_logger(self.settings.logging)
        self.logger = get_logger("TeleBellApp")
        self.logger.debug(f"TeleBell v{__version__} ({self.settings.environment})")
        return True

    def _with_overrides(self, args: argparse.Namespace) -> Settings:
        settings = self.settings.with_optimizer(
            starts=getattr(args, "starts", None),
            grid_floor=getattr(args, "grid_floor", None),
            seed=getattr(args, "optimizer_seed", None),
        )
        threads = getattr(args, "threads", None)
        if threads:
            settings = settings.model_copy(
                update={"scan": settings.scan.model_copy(update={"threads": threads})}
            )
        return settings

    def analyze(self, args: argparse.Namespace) -> int:
        report = cmd_analyze(args.state, self._with_overrides(args), json_path=args.json)
        print(report.to_json())
        return ExitCode.OK

    async def scan(self, args: argparse.Namespace) -> int:
        await cmd_scan(args.lam, args.alpha, args.out, self._with_overrides(args))
        return ExitCode.OK

    def verify(self, args: argparse.Namespace) -> int:
        summary = cmd_verify(args.suite, self._with_overrides(args), seed=args.seed, trials=args.trials)
        for line in summary.lines():
            print(line)
        return ExitCode.OK if summary.passed else ExitCode.CHECK_FAILED

    async def run(self, args: argparse.Namespace) -> int:
        """Dispatch a parsed command and map failures to exit codes."""
        try:
            if args.command == "analyze":
                return self.analyze(args)
            if args.command == "scan":
                return await self.scan(args)
            return self.verify(args)
        except (StateSpecError, GridSpecError) as e:
            print(f"Error: {e}", file=sys.stderr)
            return ExitCode.PARSE_ERROR
        except StateValidationError as e:
            print(f"Error: {e}", file=sys.stderr)
            if e.min_eigenvalue is not None:
                print(f"min_eigenvalue: {e.min_eigenvalue!r}", file=sys.stderr)
            return ExitCode.INVALID_STATE
        except ReportOutputError as e:
            print(f"Error: {e}", file=sys.stderr)
            return ExitCode.OUTPUT_ERROR
        except ValidationError as e:
            print(f"Error: invalid option: {e}", file=sys.stderr)
            return ExitCode.PARSE_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="TeleBell - Bell teleportation inequality analysis"
    )
    parser.add_argument(
        "--config",
        default="config.yaml",
        help="Configuration file path (default: config.yaml)"
    )
    parser.add_argument(
        "--log-level",
        default=None,
        help="Override the configured log level"
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"TeleBell v{__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    optimizer = argparse.ArgumentParser(add_help=False)
    optimizer.add_argument("--starts", type=int, help="Quasi-random multistarts per class")
    optimizer.add_argument("--grid-floor", type=int, help="Angle grid resolution per axis")
    optimizer.add_argument("--optimizer-seed", type=int, help="Seed of the multistart sampler")

    analyze = sub.add_parser("analyze", parents=[optimizer], help="Analyze one channel state")
    analyze.add_argument("--state", required=True, help="Named state spec or state file path")
    analyze.add_argument("--json", default=None, help="Also write the report to this path")

    scan = sub.add_parser("scan", parents=[optimizer], help="Scan the (lambda, alpha) family")
    scan.add_argument("--lambda", dest="lam", required=True, help="Lambda grid start:stop:step")
    scan.add_argument("--alpha", required=True, help="Alpha grid start:stop:step")
    scan.add_argument("--out", required=True, help="Output CSV path")
    scan.add_argument("--threads", type=int, default=None, help="Worker processes (overrides TELEBELL_THREADS)")

    verify = sub.add_parser("verify", parents=[optimizer], help="Run a verification suite")
    verify.add_argument("suite", choices=[s.value for s in VerifySuite])
    verify.add_argument("--seed", type=int, default=0, help="Seed for random states")
    verify.add_argument("--trials", type=int, default=None, help="Number of random trials")

    return parser


async def main(argv: Optional[List[str]] = None) -> int:
    """Main function."""
    args = build_parser().parse_args(argv)

    app = TeleBellApp(config_file=args.config)
    if not app.initialize(args.log_level):
        return ExitCode.PARSE_ERROR

    return int(await app.run(args))


if __name__ == "__main__":
    try:
        exit_code = asyncio.run(main())
        sys.exit(exit_code)

    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        sys.exit(130)
