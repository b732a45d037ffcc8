"""
delpezzo-classify

Command-line driver: parses the subcommands, applies settings overrides and
maps failures to exit statuses (0 ok, 1 mismatch, 2 classification error).
"""
import argparse
import logging
import sys
from typing import List, Optional

from cli_gateway.commands import classification_commands, singularity_commands
from cli_gateway.core.config import settings
from cli_gateway.core.status import EXIT_ERROR
from services.errors import ClassificationError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delpezzo-classify",
        description="Log del Pezzo pairs (S, 6/7 C + B) with an elliptic boundary curve C",
    )
    parser.add_argument("--log-level", default=None, help="overrides DELPEZZO_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    enumerate_ = commands.add_parser("enumerate", help="run the search and write the classification table")
    enumerate_.add_argument("--output", dest="output_dir", default=None)
    enumerate_.add_argument("--format", choices=("json", "dot", "both"), default="both")
    enumerate_.add_argument("--max-n", type=int, default=None)
    enumerate_.add_argument("--parallelism", type=int, default=None)
    enumerate_.add_argument("--max-states", type=int, default=None)
    enumerate_.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=None)
    enumerate_.add_argument("--verify-golden", action="store_true")
    enumerate_.set_defaults(handler=classification_commands.cmd_enumerate)

    verify_row = commands.add_parser("verify-row", help="re-derive every column of one table row")
    verify_row.add_argument("id", type=int)
    verify_row.add_argument("--max-n", type=int, default=None)
    verify_row.set_defaults(handler=classification_commands.cmd_verify_row)

    verify_all = commands.add_parser("verify-all", help="verify-row for every table row")
    verify_all.add_argument("--max-n", type=int, default=None)
    verify_all.set_defaults(handler=classification_commands.cmd_verify_all)

    sing = commands.add_parser("sing", help="report on a cyclic quotient point [m,k]")
    sing.add_argument("m", type=int)
    sing.add_argument("k", type=int)
    sing.add_argument("--b", default="6/7")
    sing.add_argument("--d", type=int, default=1)
    sing.set_defaults(handler=singularity_commands.cmd_sing)

    hj = commands.add_parser("hj", help="Hirzebruch-Jung expansion of m/(m-k), or contraction of --chain")
    hj.add_argument("m", type=int, nargs="?")
    hj.add_argument("k", type=int, nargs="?")
    hj.add_argument("--chain", type=int, nargs="+")
    hj.set_defaults(handler=singularity_commands.cmd_hj)

    check = commands.add_parser("complement-check", help="verify the complements of a table row")
    check.add_argument("row", type=int)
    check.add_argument("--option", type=int, default=0)
    check.add_argument("--n", type=int, default=None)
    check.add_argument("--coeff", nargs="+", default=None, metavar="VERTEX=P/Q")
    check.add_argument("--max-n", type=int, default=None)
    check.set_defaults(handler=classification_commands.cmd_complement_check)

    export = commands.add_parser("export-dot", help="write DOT files for one row or every emitted surface")
    export.add_argument("--row", type=int, default=None)
    export.add_argument("--output", dest="output_dir", default=None)
    export.set_defaults(handler=classification_commands.cmd_export_dot)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except ClassificationError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
