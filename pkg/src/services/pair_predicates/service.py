"""
Pair predicates

The four conditions on (S, B), the divisor D and the invariant δ, the
bounds along C and the largest admissible coefficient of C.
"""
from dataclasses import replace
from fractions import Fraction
from typing import List, Optional, Tuple

import logging

from services.errors import MissingFibration, NotElliptic, OutOfRange, Unbounded
from services.graph_core import service as graph_service
from services.graph_core.models import DualGraph, VertexRole
from services.intersection_theory import service as intersection_service
from services.intersection_theory.models import CrepantData, Divisor
from services.rationals import format_rational
from services.singularities import service as singularity_service
from services.singularities.models import CyclicQuotientType, ResolutionChain
from .models import ONE_SEVENTH, SIX_SEVENTHS, ExReport, LogPair, PointOnC

logger = logging.getLogger(__name__)

C2_BELOW_THREE = "C^2 < 3"
TWO_POINTS_ON_C = "two singular points on C with C^2 < 6"
MLD_BELOW_BOUND = "mld on C below 1 - C^2/7"
EX2_DEGREE_MISMATCH = "(K + D).C disagrees with the singularities on C"


def _crepant(p: LogPair, crepant: Optional[CrepantData]) -> CrepantData:
    return crepant if crepant is not None else intersection_service.crepant_pullback(p)


def component_denominator(coefficient: Fraction) -> int:
    """d for a standard coefficient (d-1)/d."""
    return (1 / (1 - Fraction(coefficient))).numerator


def singular_points_on_c(p: LogPair, crepant: Optional[CrepantData] = None) -> List[PointOnC]:
    g = p.graph
    c = p.c
    crepant = _crepant(p, crepant)
    neighbours_of_c = g.neighbours(c)
    points = []

    for component in graph_service.black_components(g):
        contacts = [v for v in component if v in neighbours_of_c]
        if len(contacts) != 1:
            continue
        chain = graph_service.chain_from(g, component, contacts[0])
        if chain is None:
            logger.debug(f"component {sorted(component)} on C is not a chain")
            continue
        through = [comp for comp in p.components if g.multiplicity(comp, chain[-1])]
        d = component_denominator(p.boundary[through[0]]) if through else 1
        m, k = singularity_service.hj_contract(
            ResolutionChain(tuple(g.weight(v) for v in chain), d=d)
        )
        points.append(
            PointOnC(
                chain=tuple(chain),
                component=through[0] if through else None,
                type=CyclicQuotientType(m, k, d),
                log_discrepancy=crepant.log_discrepancy(chain[0]),
            )
        )

    for comp in p.components:
        if g.multiplicity(c, comp):
            d = component_denominator(p.boundary[comp])
            points.append(
                PointOnC(
                    chain=(),
                    component=comp,
                    type=CyclicQuotientType(d, d, d),
                    log_discrepancy=1 - p.b + Fraction(1, d),
                )
            )
    return points


def compute_D(p: LogPair) -> Divisor:
    components = {p.c: Fraction(1)}
    components.update({v: (1 if x >= SIX_SEVENTHS else x) for v, x in p.boundary.items()})
    return Divisor(components)


def log_singularity_degree(p: LogPair) -> Fraction:
    """(K + f^*D)·C on the resolution: zero when (S, B) is smooth along C, positive otherwise."""
    pulled = intersection_service.pulled_back(p.graph, compute_D(p))
    return intersection_service.dot(p.graph, pulled + Divisor(canonical=1), Divisor({p.c: 1}))


def delta(p: LogPair, crepant: Optional[CrepantData] = None) -> int:
    crepant = _crepant(p, crepant)
    count = sum(1 for v in [p.c] + p.components if 1 - p.coefficient(v) <= ONE_SEVENTH)
    count += sum(1 for v in p.exceptional_ids if crepant.log_discrepancy(v) <= ONE_SEVENTH)
    return count


def c_degree(p: LogPair) -> Fraction:
    """(K + B)·C on S."""
    return intersection_service.degree_vs_curve(p, intersection_service.log_boundary(p), p.c)


def check_ex1(p: LogPair) -> bool:
    return c_degree(p) <= 0


def check_ex2_elliptic(p: LogPair) -> bool:
    c = p.graph.vertex(p.c)
    if c.arithmetic_genus != 1:
        raise NotElliptic(f"C has arithmetic genus {c.arithmetic_genus}")
    neighbours_of_c = p.graph.neighbours(p.c)
    on_c = any(v in neighbours_of_c for v in p.exceptional_ids)
    return on_c or bool(p.components)


def check_ex3(p: LogPair, crepant: Optional[CrepantData] = None) -> bool:
    crepant = _crepant(p, crepant)
    if crepant.non_log_canonical:
        return False
    if any(crepant.log_discrepancy(v) <= ONE_SEVENTH for v in p.exceptional_ids):
        return False
    return all(
        singularity_service.is_one_seventh_lt(point.type)
        for point in singular_points_on_c(p, crepant)
        if point.is_singular
    )


def zhang_count(p: LogPair) -> Tuple[int, int]:
    """
    The number r of exceptional sections counted two ways:
    horizontal black curves minus Σ, and white curves in fibres minus singular fibres.
    """
    g = p.graph
    if not any(v.role == VertexRole.MINIMAL_SECTION for v in g.vertices):
        raise MissingFibration("graph carries no ruling")
    horizontal = [v for v in g.black_ids() if g.vertex(v).fibre is None]
    whites_in_fibres = [v for v in g.white_ids() if g.vertex(v).fibre is not None]
    singular_fibres = [f for f in g.fibres() if len(g.fibre_ids(f)) > 1]
    return len(horizontal) - 1, len(whites_in_fibres) - len(singular_fibres)


def check_ex4(p: LogPair) -> bool:
    """ρ(S) = 1: the (-n)-curves, n >= 2, number ρ(S^min) - 1 = 1 + blow-ups."""
    g = p.graph
    if len(g.black_ids()) != 1 + g.blowup_count:
        return False
    try:
        lhs, rhs = zhang_count(p)
    except MissingFibration:
        return True
    return lhs == rhs


def _degree_at(p: LogPair, b: Fraction) -> Fraction:
    coefficients = {p.c: b}
    coefficients.update(p.boundary)
    divisor = Divisor(coefficients, canonical=1)
    return intersection_service.dot(
        p.graph, intersection_service.pulled_back(p.graph, divisor), Divisor({p.c: 1})
    )


def max_b(p: LogPair) -> Fraction:
    """The b with (K + bC + B_1)·C = 0; the degree is affine in b."""
    low, high = SIX_SEVENTHS, Fraction(1)
    degree_low, degree_high = _degree_at(p, low), _degree_at(p, high)
    slope = (degree_high - degree_low) / (high - low)
    if slope == 0:
        raise Unbounded(f"degree against C does not depend on b (constant {degree_low})")
    return low - degree_low / slope


def lemma22_bounds(p: LogPair, crepant: Optional[CrepantData] = None) -> List[str]:
    c2 = p.graph.weight(p.c)
    violations = []
    if c2 < 3:
        violations.append(f"{C2_BELOW_THREE}: C^2 = {c2}")
    points = singular_points_on_c(p, crepant)
    if len(points) >= 2 and c2 < 6:
        violations.append(f"{TWO_POINTS_ON_C}: {len(points)} points, C^2 = {c2}")
    bound = 1 - Fraction(c2, 7)
    for point in points:
        if point.log_discrepancy < bound:
            violations.append(
                f"{MLD_BELOW_BOUND}: {format_rational(point.log_discrepancy)} at {point.type}, bound {format_rational(bound)}"
            )
    return violations


def type_inequality(c2: int, t: CyclicQuotientType) -> bool:
    if not 3 <= c2 <= 6:
        raise OutOfRange(f"type inequality needs 3 <= C^2 <= 6, got {c2}")
    return (6 - c2) * t.m <= 7 - t.k


def ex_report(p: LogPair) -> ExReport:
    crepant = intersection_service.crepant_pullback(p)
    violations = [str(v) for v in graph_service.validate_curve_constraints(p.graph, p.boundary)]
    violations += lemma22_bounds(p, crepant)
    ex2 = check_ex2_elliptic(p)
    degree = log_singularity_degree(p)
    if ex2 != (degree > 0):
        violations.append(f"{EX2_DEGREE_MISMATCH}: degree {format_rational(degree)}")
    return ExReport(
        ex1=check_ex1(p),
        ex2=ex2,
        ex3=check_ex3(p, crepant),
        ex4=check_ex4(p),
        violations=tuple(violations),
    )


def pair_form(p: LogPair):
    """
    Canonical form of (S, B) itself: C, the exceptional curves and the
    boundary components, with coefficients as colours.
    """
    g = p.graph
    keep = set([p.c] + p.exceptional_ids + p.components)
    vertices = []
    for v in g.vertices:
        if v.id not in keep:
            continue
        if v.id == p.c:
            role = VertexRole.BOUNDARY_CURVE
        elif v.id in p.boundary:
            role = VertexRole.BOUNDARY_COMPONENT
        else:
            role = VertexRole.EXCEPTIONAL
        vertices.append(replace(v, role=role, fibre=None, section_degree=0))
    multiplicities = {pair: m for pair, m in g.multiplicities().items() if pair <= keep}
    sub = DualGraph.build(vertices, multiplicities, g.blowup_count)
    labels = {v: format_rational(x) for v, x in p.boundary.items()}
    return graph_service.canonical_form(sub, labels)
