# src/qineq_audit/campaign/cli.py
"""Command-line entry point: ``qineq-audit <command> [options]``."""

import argparse
import logging
import sys
from collections.abc import Sequence

from ..config import setup_logging
from ..errors import QAuditError, UsageError
from .common import OUTPUT_FORMATS, AuditKind, build_campaign_config
from .io import emit_report
from .main import run_audit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_IO = 3

COMMANDS = {
    "audit": None,
    "identity": AuditKind.IDENTITY,
    "moments": AuditKind.MOMENTS,
    "ineq": AuditKind.INEQUALITIES,
    "limits": AuditKind.LIMITS,
    "regression": AuditKind.REGRESSION,
}


def float_list(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated numbers, got {text!r}"
        ) from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qineq-audit",
        description="Audit quantum Montgomery and Ostrowski inequalities numerically.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, kind in COMMANDS.items():
        help_text = (
            "run every configured audit" if kind is None else f"run the {kind.value} audit"
        )
        sub = subparsers.add_parser(command, help=help_text)
        sub.add_argument("--config", help="campaign YAML file")
        sub.add_argument("--format", choices=OUTPUT_FORMATS, help="report format")
        sub.add_argument("--out", help="report path")
        sub.add_argument(
            "--strict",
            action="store_true",
            help="also fail on any violated or malformed record",
        )
        sub.add_argument("--seed", type=int, help="seed for sampled checks")
        sub.add_argument(
            "--q", type=float_list, action="extend", help="comma-separated q values"
        )
        sub.add_argument(
            "--r",
            type=float_list,
            action="extend",
            help="comma-separated exponents r >= 1",
        )
    return parser


def exit_status(report, strict: bool) -> int:
    """
    1 when an asserted claim failed, or under ``strict`` when any record
    does not hold; 0 otherwise.
    """
    if report.asserted_failures:
        return EXIT_FINDINGS
    if strict and any(not r.holds or r.malformed for r in report.records):
        return EXIT_FINDINGS
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    kind = COMMANDS[args.command]
    overrides = {
        "format": args.format,
        "output": args.out,
        "seed": args.seed,
        "q_grid": args.q,
        "r_values": args.r,
        "audit_kinds": [kind.value] if kind is not None else None,
    }
    try:
        config = build_campaign_config(args.config, overrides)
    except UsageError as e:
        logger.error(f"Invalid campaign configuration: {e}")
        print(f"qineq-audit: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        report = run_audit(config)
    except QAuditError as e:
        logger.exception(f"Audit aborted: {e}")
        print(f"qineq-audit: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        path = emit_report(report, config.output_format, config.output)
    except OSError as e:
        print(f"qineq-audit: cannot write report: {e}", file=sys.stderr)
        return EXIT_IO

    failures = report.asserted_failures
    for record in failures:
        logger.warning(
            "Asserted claim failed",
            extra={"audit_kind": record.audit_kind, "function": record.function},
        )
    print(
        f"{len(report.records)} records, {len(failures)} asserted failures, "
        f"report written to {path}"
    )
    return exit_status(report, args.strict)


if __name__ == "__main__":
    sys.exit(main())
