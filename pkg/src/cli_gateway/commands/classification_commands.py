"""
Classification commands

enumerate, verify-row, verify-all, complement-check and export-dot. Every
handler takes the parsed arguments and returns the process exit status.
"""
from argparse import Namespace
from pathlib import Path
from typing import List

import logging

from cli_gateway.core import storage
from cli_gateway.core.config import settings
from cli_gateway.core.status import EXIT_MISMATCH, EXIT_OK
from services.complements import service as complements_service
from services.enumeration import classification
from services.enumeration.golden import build_surface, golden_pairs, golden_row
from services.enumeration.schemas import CertificateSchema, RowVerificationSchema
from services.errors import OutOfRange
from services.rationals import format_rational, parse_rational

logger = logging.getLogger(__name__)


def _option(args: Namespace, default):
    value = getattr(args, default, None)
    return value if value is not None else getattr(settings, default)


def cmd_enumerate(args: Namespace) -> int:
    output_dir = Path(_option(args, "output_dir"))
    table = classification.classify_all(
        max_n=_option(args, "max_n"),
        parallelism=_option(args, "parallelism"),
        max_states=_option(args, "max_states"),
        deterministic=_option(args, "deterministic"),
    )
    if args.format in ("json", "both"):
        storage.write_table(table, output_dir)
    if args.format in ("dot", "both"):
        storage.write_dot_bundle(((row.id, row.graph.to_graph()) for row in table.rows), output_dir)

    print(f"{table.surface_count} surfaces, {sum(len(r.boundary_options) for r in table.rows)} pairs")
    for flag in table.flags:
        print(f"  row {flag.row}: {flag.kind}: {flag.detail}")

    if args.verify_golden:
        report = classification.match_golden(table)
        print(f"matched {report.matched}, missing {report.missing}, surplus {report.surplus}")
        if not report.bijective:
            logger.warning(f"golden mismatch: options differ on {report.option_mismatches}, surplus {report.surplus}")
            return EXIT_MISMATCH
    return EXIT_OK


def _print_verification(report: RowVerificationSchema):
    print(f"row {report.row}")
    width = max(len(check.name) for check in report.checks)
    for check in report.checks:
        print(f"  {check.status.upper():8} {check.name:{width}}  expected {check.expected}, got {check.actual}")


def cmd_verify_row(args: Namespace) -> int:
    report = classification.verify_golden_row(args.id, _option(args, "max_n"))
    _print_verification(report)
    if not report.passed:
        logger.warning(f"row {args.id} has unflagged mismatches")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify_all(args: Namespace) -> int:
    reports = classification.verify_all(_option(args, "max_n"))
    failed = []
    for report in reports:
        _print_verification(report)
        if not report.passed:
            failed.append(report.row)
    print(f"{len(reports) - len(failed)} of {len(reports)} rows verify")
    if failed:
        logger.warning(f"rows with unflagged mismatches: {failed}")
        return EXIT_MISMATCH
    return EXIT_OK


def _parse_coefficients(items: List[str]) -> dict:
    coefficients = {}
    for item in items:
        if "=" not in item:
            raise OutOfRange(f"coefficient {item!r} is not of the form vertex=p/q")
        vertex, value = item.split("=", 1)
        coefficients[vertex.strip()] = parse_rational(value)
    return coefficients


def cmd_complement_check(args: Namespace) -> int:
    row = golden_row(args.row)
    pairs = golden_pairs(row)
    if not 0 <= args.option < len(pairs):
        raise OutOfRange(f"row {row.id} has options 0 to {len(pairs) - 1}")
    p, option = pairs[args.option], row.options[args.option]

    if args.coeff:
        values = {row.vertex_of(v): x for v, x in _parse_coefficients(args.coeff).items()}
        certs = [(complements_service.certified(p, args.n or 7, values), [])]
    elif args.n is not None:
        found = complements_service.find_complement(p, args.n, max(args.n, _option(args, "max_n")))
        if found is None:
            print(f"no {args.n}-complement found")
            return EXIT_MISMATCH
        certs = [(found, [])]
    else:
        certs = [classification.certify_golden(p, row, gc) for gc in option.complements]

    status = EXIT_OK
    for cert, extra in certs:
        schema = CertificateSchema(
            n=cert.n,
            plus_coefficients=dict(cert.plus_coefficients),
            ok=cert.report.ok and not extra,
            source="cli",
            failures=list(cert.report.failures) + list(extra),
        )
        coefficients = ", ".join(f"{v}={format_rational(x)}" for v, x in sorted(cert.plus_coefficients.items()))
        print(f"{schema.n}-complement [{coefficients}]: {'verifies' if schema.ok else 'fails'}")
        for failure in schema.failures:
            print(f"  {failure}")
        if not schema.ok:
            status = EXIT_MISMATCH
    return status


def cmd_export_dot(args: Namespace) -> int:
    output_dir = Path(_option(args, "output_dir"))
    if args.row is not None:
        graphs = [(args.row, build_surface(golden_row(args.row).surface))]
    else:
        source = output_dir / storage.TABLE_FILE
        if source.exists():
            table = storage.read_table(source)
        else:
            table = classification.classify_all(
                max_n=_option(args, "max_n"),
                parallelism=_option(args, "parallelism"),
                max_states=_option(args, "max_states"),
            )
        graphs = [(row.id, row.graph.to_graph()) for row in table.rows]
    for path in storage.write_dot_bundle(graphs, output_dir):
        print(path)
    return EXIT_OK
