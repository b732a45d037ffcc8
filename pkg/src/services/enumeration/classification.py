"""
Classification

Runs the search, offers boundaries to every accepted surface, matches the
pairs against the golden table and assembles the output table with
complement certificates, relation checks and flags.
"""
from datetime import datetime, timezone
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import logging

from services.complements import service as complements_service
from services.complements.models import ComplementCertificate
from services.graph_core import service as graph_service
from services.graph_core.models import DualGraph
from services.intersection_theory import service as intersection_service
from services.intersection_theory.models import Divisor, RelationReport
from services.pair_predicates import service as pair_service
from services.pair_predicates.models import SIX_SEVENTHS, LogPair
from services.rationals import format_rational
from . import exclusions
from . import service as enumeration_service
from .golden import GoldenComplement, GoldenOption, GoldenRow, golden_pair, golden_pairs, golden_row, golden_rows
from .models import RejectionLog
from .schemas import (
    BoundaryOptionSchema,
    CertificateSchema,
    CheckSchema,
    ClassificationTable,
    FlagSchema,
    GraphSchema,
    MatchReportSchema,
    RelationSchema,
    RowSchema,
    RowVerificationSchema,
    SearchStatsSchema,
)

logger = logging.getLogger(__name__)

SURPLUS_ROW_BASE = 100
TABLE_WIDE = 0


def _symbol_divisor(row: GoldenRow, symbol: str) -> Divisor:
    if symbol == "-K":
        return Divisor({}, canonical=-1)
    return Divisor({row.vertex_of(symbol): 1})


def check_relations(row: GoldenRow) -> RelationReport:
    p = golden_pair(row, row.options[0])
    return intersection_service.verify_relations(
        p, [(symbol, _symbol_divisor(row, symbol), q) for symbol, q in row.relations]
    )


def certify_golden(p: LogPair, row: GoldenRow, gc: GoldenComplement) -> Tuple[ComplementCertificate, List[str]]:
    """Certificate for a complement as printed, plus failures the certificate itself cannot express."""
    if gc.trivial:
        return complements_service.trivial_certificate(p, gc.n), []
    values = {row.vertex_of(symbol): x for symbol, x in gc.coefficients}
    exceptional = set(p.exceptional_ids)
    on_surface = {v: x for v, x in values.items() if v not in exceptional}
    cert = complements_service.certified(p, gc.n, on_surface)

    extra = []
    if gc.on_resolution:
        crepant = intersection_service.crepant_coefficients(p.graph, on_surface)
        for v, x in sorted(values.items()):
            if v in exceptional and crepant.coefficient(v) != x:
                extra.append(f"pullback coefficient of {v} is {format_rational(crepant.coefficient(v))}, printed {format_rational(x)}")
    elif len(on_surface) != len(values):
        extra.append("printed complement has exceptional components")
    return cert, extra


def _certificate_schema(cert: ComplementCertificate, source: str, extra: Sequence[str] = ()) -> CertificateSchema:
    report = cert.report
    return CertificateSchema(
        n=cert.n,
        plus_coefficients=dict(cert.plus_coefficients),
        ok=report.ok and not extra,
        source=source,
        failures=list(report.failures) + list(extra),
        equivalence=report.equivalence,
    )


def _boundary_text(p: LogPair) -> str:
    if not p.boundary:
        return "0"
    return " + ".join(f"{format_rational(x)}{v}" for v, x in sorted(p.boundary.items()))


def _option_schema(
    p: LogPair,
    max_n: int,
    row_id: int,
    flags: List[FlagSchema],
    golden: Optional[GoldenRow] = None,
    option: Optional[GoldenOption] = None,
) -> BoundaryOptionSchema:
    mb = pair_service.max_b(p)
    if option is not None and mb != option.max_b:
        erratum = option.derived_max_b == mb
        flags.append(
            FlagSchema(
                row=row_id,
                kind="erratum" if erratum else "max_b_mismatch",
                detail=f"B1 = {_boundary_text(p)}: printed max_b {format_rational(option.max_b)}, computed {format_rational(mb)}",
            )
        )

    certs = []
    if max_n >= 7:
        found = complements_service.find_complement(p, 7, max_n)
        if found is not None:
            certs.append(_certificate_schema(found, "search"))
        else:
            flags.append(FlagSchema(row=row_id, kind="no_7_complement", detail=f"B1 = {_boundary_text(p)}"))
    if option is not None:
        for gc in option.complements:
            if gc.n > max_n:
                continue
            cert, extra = certify_golden(p, golden, gc)
            schema = _certificate_schema(cert, "table", extra)
            certs.append(schema)
            if not schema.ok:
                flags.append(
                    FlagSchema(
                        row=row_id,
                        kind="erratum" if option.derived_max_b is not None else "complement_mismatch",
                        detail=f"printed {gc.n}-complement for B1 = {_boundary_text(p)} fails: {'; '.join(schema.failures)}",
                    )
                )
    n = mb.denominator
    if n <= max_n and not any(c.ok and c.n == n and c.source == "table" for c in certs):
        certs.append(_certificate_schema(complements_service.trivial_certificate(p, n), "trivial"))

    regular = complements_service.regular_complements(p, max_n)
    return BoundaryOptionSchema(
        boundary=dict(p.boundary),
        max_b=mb,
        delta=pair_service.delta(p),
        complements=certs,
        regular_complements=[k for k, cert in regular.items() if cert is not None],
    )


def _row_schema(
    row_id: int,
    s_c_label: Optional[str],
    graph: DualGraph,
    items: Sequence[Tuple[LogPair, Optional[GoldenOption]]],
    golden: Optional[GoldenRow],
    provenance: Sequence[str],
    max_n: int,
    flags: List[FlagSchema],
) -> RowSchema:
    options = [_option_schema(p, max_n, row_id, flags, golden, option) for p, option in items]
    relations, h_squared, consistent = [], None, None
    if golden is not None:
        report = check_relations(golden)
        relations = [RelationSchema(divisor=symbol, fraction=q) for symbol, q in golden.relations]
        h_squared, consistent = report.h_squared, report.consistent
        if not consistent:
            flags.append(FlagSchema(row=row_id, kind="relations", detail="relations give no common H^2 > 0"))
    return RowSchema(
        id=row_id,
        s_c_label=s_c_label,
        form_digest=graph_service.form_digest(graph_service.canonical_form(graph)),
        graph=GraphSchema.from_graph(graph),
        labels=dict(golden.labels) if golden is not None else {},
        boundary_options=options,
        relations=relations,
        h_squared=h_squared,
        relations_consistent=consistent,
        provenance=list(provenance),
    )


def _golden_index() -> Dict[tuple, Tuple[GoldenRow, int]]:
    index = {}
    for row in golden_rows():
        for i, p in enumerate(golden_pairs(row)):
            index[pair_service.pair_form(p)] = (row, i)
    return index


def _matched_row(row, st, pairs, forms, index, max_n, flags) -> RowSchema:
    golden = golden_pairs(row)
    matched, surplus = set(), []
    for p, form in zip(pairs, forms):
        entry = index.get(form)
        if entry is not None and entry[0].id == row.id:
            matched.add(entry[1])
        else:
            surplus.append(p)

    items = [(golden[i], row.options[i]) for i in sorted(matched)]
    mapping = graph_service.surface_isomorphism(st.graph, golden[0].graph) if surplus else None
    for p in surplus:
        flags.append(FlagSchema(row=row.id, kind="surplus_option", detail=f"B1 = {_boundary_text(p)}"))
        if mapping is not None:
            boundary = {mapping[v]: x for v, x in p.boundary.items()}
            items.append((LogPair(golden[0].graph, p.b, boundary), None))
    for i, option in enumerate(row.options):
        if i not in matched:
            flags.append(FlagSchema(row=row.id, kind="missing_option", detail=f"B1 = {_boundary_text(golden[i])}"))
    return _row_schema(row.id, row.s_c_label, golden[0].graph, items, row, st.provenance, max_n, flags)


def _run_exclusions(log: RejectionLog, emitted: set, flags: List[FlagSchema]):
    for st in exclusions.case2_states():
        decision = exclusions.case2_case3_filters(st)
        if decision.accepted:
            flags.append(FlagSchema(row=TABLE_WIDE, kind="section_accepted", detail=" > ".join(st.provenance)))
            continue
        log.record(decision.reason, st.provenance)
        if decision.reduced is not None:
            g = decision.reduced.graph
            forms = {pair_service.pair_form(LogPair(g, SIX_SEVENTHS, {w: Fraction(1, 2)})) for w in g.white_ids()}
            if forms & emitted:
                logger.info("multiplicity-4 section reduces to an emitted pair")
            else:
                flags.append(FlagSchema(row=TABLE_WIDE, kind="reduction_unmatched", detail=decision.reason))

    plane = exclusions.verify_p2_exclusion()
    if not plane.excluded:
        flags.append(FlagSchema(row=TABLE_WIDE, kind="plane_not_excluded", detail=str(plane)))


def classify_all(
    max_n: int = 12,
    parallelism: int = 1,
    max_states: int = 500,
    deterministic: bool = True,
) -> ClassificationTable:
    result = enumeration_service.search(parallelism, max_states)
    log = result.rejections
    index = _golden_index()
    flags: List[FlagSchema] = []

    cone = golden_row(1)
    cone_pairs = golden_pairs(cone)
    emitted = {pair_service.pair_form(p) for p in cone_pairs}
    rows = [
        _row_schema(
            cone.id, cone.s_c_label, cone_pairs[0].graph,
            list(zip(cone_pairs, cone.options)), cone, result.accepted[0].provenance, max_n, flags,
        )
    ]

    surplus_id = SURPLUS_ROW_BASE
    matched_ids = {cone.id}
    for st in result.accepted[1:]:
        pairs = enumeration_service.assign_boundaries(st, log)
        if not pairs:
            continue
        forms = [pair_service.pair_form(p) for p in pairs]
        emitted.update(forms)
        hits = sorted({index[f][0].id for f in forms if f in index})
        if len(hits) == 1 and hits[0] in matched_ids:
            logger.debug(f"{' > '.join(st.provenance)} repeats row {hits[0]}")
            continue
        if len(hits) == 1:
            matched_ids.add(hits[0])
            rows.append(_matched_row(golden_row(hits[0]), st, pairs, forms, index, max_n, flags))
            continue
        surplus_id += 1
        detail = f"{' > '.join(st.provenance)} matches rows {hits}" if hits else " > ".join(st.provenance)
        flags.append(FlagSchema(row=surplus_id, kind="surplus_surface", detail=detail))
        rows.append(
            _row_schema(surplus_id, st.s_c_label, st.graph, [(p, None) for p in pairs], None, st.provenance, max_n, flags)
        )

    present = {row.id for row in rows}
    for row in golden_rows():
        if row.id not in present:
            kind = "known_missing" if row.known_missing else "missing_row"
            flags.append(FlagSchema(row=row.id, kind=kind, detail=row.known_missing or "not emitted by the search"))
        for note in row.notes:
            flags.append(FlagSchema(row=row.id, kind="note", detail=note))

    _run_exclusions(log, emitted, flags)
    rows.sort(key=lambda r: r.id)
    flags.sort(key=lambda f: (f.row, f.kind, f.detail))
    logger.info(f"classification: {len(rows)} surfaces, {sum(len(r.boundary_options) for r in rows)} pairs, {len(flags)} flags")
    return ClassificationTable(
        rows=rows,
        flags=flags,
        rejections=dict(sorted(log.counts.items())),
        search=SearchStatsSchema(accepted=len(result.accepted), visited=result.visited, duplicates=result.duplicates),
        generated_at=None if deterministic else datetime.now(timezone.utc).isoformat(),
    )


def match_golden(table: ClassificationTable) -> MatchReportSchema:
    """Compare the emitted pairs with the golden rows by pair form."""
    emitted: Dict[int, set] = {}
    for row in table.rows:
        g = row.graph.to_graph()
        emitted[row.id] = {
            pair_service.pair_form(LogPair(g, SIX_SEVENTHS, option.boundary)) for option in row.boundary_options
        }
    all_emitted = set().union(*emitted.values()) if emitted else set()

    report = MatchReportSchema(flags=[f for f in table.flags if f.kind in ("known_missing", "erratum", "note")])
    golden_ids = set()
    for row in golden_rows():
        golden_ids.add(row.id)
        forms = {pair_service.pair_form(p) for p in golden_pairs(row)}
        if not forms & all_emitted:
            report.missing.append(row.id)
        elif emitted.get(row.id) == forms:
            report.matched.append(row.id)
        else:
            report.option_mismatches.append(row.id)
    report.surplus = sorted(set(emitted) - golden_ids)
    return report


def verify_golden_row(row_id: int, max_n: int = 12) -> RowVerificationSchema:
    """Re-derive every column of one table row from its recipe."""
    row = golden_row(row_id)
    checks = []
    for option in row.options:
        p = golden_pair(row, option)
        label = _boundary_text(p)
        mb = pair_service.max_b(p)
        if mb == option.max_b:
            status = "pass"
        else:
            status = "flagged" if option.derived_max_b == mb else "fail"
        checks.append(CheckSchema(name=f"max_b, B1 = {label}", expected=format_rational(option.max_b), actual=format_rational(mb), status=status))

        for gc in option.complements:
            if gc.n > max_n:
                continue
            cert, extra = certify_golden(p, row, gc)
            ok = cert.report.ok and not extra
            if ok:
                status = "pass"
            else:
                status = "flagged" if option.derived_max_b is not None else "fail"
            name = f"{'trivial ' if gc.trivial else ''}{gc.n}-complement, B1 = {label}"
            actual = "verifies" if ok else "; ".join(list(cert.report.failures) + extra)
            checks.append(CheckSchema(name=name, expected="verifies", actual=actual, status=status))
            if ok:
                divisor = Divisor({v: gc.n * x for v, x in cert.plus_coefficients.items()}, canonical=gc.n)
                cartier = intersection_service.is_cartier(p, divisor)
                checks.append(CheckSchema(
                    name=f"{gc.n}(K + B+) Cartier, B1 = {label}", expected="integral pullback",
                    actual="integral" if cartier else "fractional", status="info",
                ))

        if option.derived_max_b is not None:
            n = option.derived_max_b.denominator
            if n <= max_n:
                cert = complements_service.trivial_certificate(p, n)
                checks.append(CheckSchema(
                    name=f"derived trivial {n}-complement, B1 = {label}", expected="verifies",
                    actual="verifies" if cert.report.ok else "; ".join(cert.report.failures),
                    status="pass" if cert.report.ok else "fail",
                ))

        if max_n >= 7:
            found = complements_service.find_complement(p, 7, max_n)
            checks.append(CheckSchema(
                name=f"7-complement search, B1 = {label}", expected="found",
                actual="found" if found is not None else "none", status="pass" if found is not None else "fail",
            ))
        regular = [n for n, cert in complements_service.regular_complements(p, max_n).items() if cert is not None]
        checks.append(CheckSchema(
            name=f"regular complements, B1 = {label}", expected="none",
            actual=", ".join(str(n) for n in regular) or "none", status="fail" if regular else "pass",
        ))

        ex = pair_service.ex_report(p)
        if ex.ok:
            status = "pass"
        else:
            status = "flagged" if row.known_missing else "fail"
        failed = [name for name, ok in (("EX1", ex.ex1), ("EX2", ex.ex2), ("EX3", ex.ex3), ("EX4", ex.ex4)) if not ok]
        checks.append(CheckSchema(
            name=f"(EX1)-(EX4), B1 = {label}", expected="all hold",
            actual="all hold" if ex.ok else ", ".join(failed + list(ex.violations)), status=status,
        ))

    report = check_relations(row)
    checks.append(CheckSchema(
        name="relations", expected="one common H^2 > 0",
        actual=f"H^2 = {format_rational(report.h_squared)}" if report.h_squared is not None else "inconsistent",
        status="pass" if report.consistent else "fail",
    ))
    return RowVerificationSchema(row=row_id, checks=checks)


def verify_all(max_n: int = 12) -> List[RowVerificationSchema]:
    return [verify_golden_row(row.id, max_n) for row in golden_rows()]
