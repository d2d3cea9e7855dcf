"""
Command-line entry point.

Every invocation writes one JSON envelope to stdout,

    {"ok": true, "result": ..., "diagnostics": [...]}

and exits with 0 on success, 1 on a domain error and 2 on a usage error.
Logs go to stderr.
"""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from ..config import configure_logging
from ..core.exceptions import FormulaDepthError, PiStateException, UsageError
from . import commands  # noqa: F401  (registers the subcommands)
from .command import REGISTRY
from .commands import Output

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so that usage errors get an envelope too."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="pretty-print the output")
    parser = _Parser(prog="pistate", description="States of product logic and their modal logic.")
    subparsers = parser.add_subparsers(dest="name", required=True, parser_class=_Parser)
    for cmd in REGISTRY.values():
        cmd.add_to(subparsers, parents=[common])
    return parser


def _emit(envelope: dict, pretty: bool) -> None:
    if pretty:
        text = json.dumps(envelope, indent=2, ensure_ascii=False)
    else:
        text = json.dumps(envelope, separators=(",", ":"), ensure_ascii=False)
    sys.stdout.write(text + "\n")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit status."""
    argv = list(sys.argv[1:] if argv is None else argv)
    pretty = "--json" in argv
    try:
        namespace = build_parser().parse_args(argv)
    except UsageError as e:
        _emit({"ok": False, "result": None, "diagnostics": [_usage(e)]}, pretty)
        return EXIT_USAGE

    try:
        output = _invoke(namespace)
    except UsageError as e:
        _emit({"ok": False, "result": None, "diagnostics": [_usage(e)]}, pretty)
        return EXIT_USAGE
    except PiStateException as e:
        logger.debug("%s failed", namespace.name, exc_info=True)
        _emit(
            {"ok": False, "result": None, "diagnostics": [{"error": type(e).__name__, "message": str(e)}]},
            pretty,
        )
        return EXIT_DOMAIN

    if isinstance(output, Output):
        result, diagnostics = output.result, list(output.diagnostics)
    else:
        result, diagnostics = output, []
    _emit({"ok": True, "result": result, "diagnostics": diagnostics}, pretty)
    return EXIT_OK


def _invoke(namespace: argparse.Namespace):
    try:
        return namespace.command.invoke(namespace)
    except RecursionError as e:
        raise FormulaDepthError("formula is nested too deeply to process") from e


def _usage(e: UsageError) -> dict:
    entry = {"error": "UsageError", "message": str(e)}
    if e.flag:
        entry["flag"] = e.flag
    return entry


def main() -> None:
    configure_logging()
    sys.exit(run())
