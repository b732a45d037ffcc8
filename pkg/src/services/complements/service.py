"""
n-complements

A certificate is a boundary B+ on tracked curves with nB+ integral,
n(K + B+) numerically trivial, K + B+ log canonical and B+ at least the
bumped boundary of the pair.
"""
from fractions import Fraction
from itertools import product
from math import floor
from typing import Dict, List, Optional

import logging

from services.errors import OutOfRange
from services.intersection_theory import service as intersection_service
from services.intersection_theory.models import Divisor
from services.pair_predicates import service as pair_service
from services.pair_predicates.models import LogPair
from .models import ComplementCertificate, ComplementReport

logger = logging.getLogger(__name__)

REGULAR_INDICES = (1, 2, 3, 4, 6)


def bump_coefficient(b: Fraction, n: int) -> Fraction:
    b = Fraction(b)
    if not 0 <= b < 1:
        raise OutOfRange(f"bump needs 0 <= b < 1, got {b}")
    if n < 1:
        raise OutOfRange(f"complement index must be positive, got {n}")
    return Fraction(floor((n + 1) * b), n)


def _degree(p: LogPair, coefficients: Dict[str, Fraction]) -> Fraction:
    divisor = Divisor(dict(coefficients), canonical=1)
    return intersection_service.dot(
        p.graph, intersection_service.pulled_back(p.graph, divisor), Divisor({p.c: 1})
    )


def verify_complement(p: LogPair, cert: ComplementCertificate) -> ComplementReport:
    failures = []
    exceptional = set(p.exceptional_ids)
    coefficients = dict(cert.plus_coefficients)

    unknown = [v for v in coefficients if not p.graph.has_vertex(v)]
    if unknown:
        failures.append(f"untracked curves {unknown}")
        coefficients = {v: x for v, x in coefficients.items() if v not in unknown}
    on_exceptional = [v for v in coefficients if v in exceptional]
    if on_exceptional:
        failures.append(f"B+ has exceptional components {on_exceptional}")
        coefficients = {v: x for v, x in coefficients.items() if v not in exceptional}

    integral = all((cert.n * x).denominator == 1 for x in coefficients.values())
    if not integral:
        failures.append(f"{cert.n}B+ is not integral")

    degree = _degree(p, coefficients)
    if degree != 0:
        failures.append(f"(K + B+)·C = {degree}")

    crepant = intersection_service.crepant_coefficients(p.graph, coefficients)
    log_canonical = all(0 <= x <= 1 for x in coefficients.values()) and not crepant.non_log_canonical
    if not log_canonical:
        failures.append("K + B+ is not log canonical")

    dominates = True
    for v in [p.c] + p.components:
        original = p.coefficient(v)
        bump = bump_coefficient(original, cert.n) if original < 1 else Fraction(1)
        if coefficients.get(v, Fraction(0)) < bump:
            dominates = False
            failures.append(f"coefficient of {v} below the bump {bump}")

    report = ComplementReport(
        integral=integral,
        degree=degree,
        log_canonical=log_canonical,
        dominates_bump=dominates,
        failures=tuple(failures),
    )
    if not report.ok:
        logger.debug(f"{cert.n}-complement {coefficients} fails: {failures}")
    return report


def certified(p: LogPair, n: int, coefficients: Dict[str, Fraction]) -> ComplementCertificate:
    cert = ComplementCertificate(n, {v: Fraction(x) for v, x in coefficients.items()})
    return ComplementCertificate(cert.n, cert.plus_coefficients, verify_complement(p, cert))


def trivial_certificate(p: LogPair, n: int) -> ComplementCertificate:
    """The bumped boundary at b = max_b itself, the table's "trivial n-compl."."""
    coefficients = {p.c: pair_service.max_b(p)}
    coefficients.update(p.boundary)
    return certified(p, n, coefficients)


def candidate_curves(p: LogPair) -> List[str]:
    """C first, then the tracked non-exceptional curves in id order."""
    exceptional = set(p.exceptional_ids)
    others = [v for v in p.graph.ids if v != p.c and v not in exceptional]
    return [p.c] + others


def find_complement(p: LogPair, n: int, max_n: int = 12) -> Optional[ComplementCertificate]:
    """
    Search coefficients j/n above the bumps on the tracked curves.

    Candidates are ordered C first, then by id, and values ascend, so the
    first certificate found is deterministic.
    """
    if n < 1 or n > max_n:
        raise OutOfRange(f"complement index {n} outside 1..{max_n}")
    curves = candidate_curves(p)
    grids = []
    for v in curves:
        low = bump_coefficient(p.coefficient(v), n)
        grids.append([Fraction(j, n) for j in range(int(low * n), n + 1)])

    base = _degree(p, {})
    slopes = [_degree(p, {v: 1}) - base for v in curves]
    for values in product(*grids):
        if base + sum(s * x for s, x in zip(slopes, values)) != 0:
            continue
        coefficients = {v: x for v, x in zip(curves, values) if x}
        cert = certified(p, n, coefficients)
        if cert.report.ok:
            logger.debug(f"found {n}-complement {coefficients}")
            return cert
    return None


def regular_complements(p: LogPair, max_n: int = 12) -> Dict[int, Optional[ComplementCertificate]]:
    return {n: find_complement(p, n, max_n) for n in REGULAR_INDICES if n <= max_n}
