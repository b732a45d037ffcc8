"""
Exceptional sections and other smooth models

Configurations with exceptional curves horizontal for the ruling (r >= 1)
never give new pairs; the filters here say why for each contact pattern.
The plane as smooth model is excluded by a fixed computation.
"""
from dataclasses import replace
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence

import logging

from services.errors import OutOfRange
from services.graph_core import service as graph_service
from services.graph_core.models import DualGraph, Vertex, VertexRole
from services.intersection_theory import service as intersection_service
from services.intersection_theory.models import Divisor
from services.pair_predicates import service as pair_service
from services.pair_predicates.models import SIX_SEVENTHS, STANDARD_COEFFICIENTS, LogPair
from services.singularities import service as singularity_service
from services.singularities.models import CyclicQuotientType
from .models import FilterDecision, PlaneExclusionReport, SearchState, SectionPattern
from .service import seed_f2

logger = logging.getLogger(__name__)

REASON_CASE3 = "C^2 <= 2 (two exceptional sections need at least 6 blow-ups on C)"
REASON_MULTISECTION = "C^2 <= 2 (section meets C at least 6 times)"
REASON_THREE_POINTS = "C^2 <= 2 (section meets C at three or more points)"
REASON_REDUCES = "reduces to a fibre configuration (multiplicity-4 contact gives S(A3+2A1))"
REASON_3A2 = "S(3A2) cannot be attained"
REASON_EX4 = "two white vertices in one fibre (violates (EX4))"

F2_C_SQUARED = 8


def section_coefficient_bound(degree: int) -> Fraction:
    """Largest coefficient d of a section of the given degree with (K + 6/7C + dE)·F <= 0."""
    if degree < 1:
        raise OutOfRange(f"section degree must be positive, got {degree}")
    return (2 - 2 * SIX_SEVENTHS) / degree


def blowups_on_c(pattern: SectionPattern) -> int:
    """Each contact point costs its order in blow-ups on C, and at least two since it starts a new fibre."""
    return sum(max(order, 2) for order in pattern.contacts)


def _section_product(first: SectionPattern, second: SectionPattern) -> int:
    # sections in |aΣ + (2a + s)F| on F_2
    a, b = first.degree, 2 * first.degree + int(first.meets_sigma)
    a2, b2 = second.degree, 2 * second.degree + int(second.meets_sigma)
    return -2 * a * a2 + a * b2 + a2 * b


def separation_blowups(patterns: Sequence[SectionPattern]) -> int:
    shared = sum(_section_product(p, q) for p, q in combinations(patterns, 2))
    return sum(p.c_intersection for p in patterns) - shared


def section_state(patterns: Sequence[SectionPattern]) -> SearchState:
    """The F_2 seed with the given sections added, before any blow-up."""
    seed = seed_f2()
    g = seed.graph
    c = g.c_id
    vertices = list(g.vertices)
    multiplicities = g.multiplicities()
    ids = []
    for i, pattern in enumerate(patterns, start=1):
        a, s = pattern.degree, int(pattern.meets_sigma)
        if pattern.c_intersection != 4 * a + 2 * s:
            raise OutOfRange(f"contacts {pattern.contacts} do not add up to C·E = {4 * a + 2 * s}")
        t = f"T{i}"
        ids.append(t)
        vertices.append(Vertex(t, _section_product(pattern, pattern), role=VertexRole.OTHER, section_degree=a))
        multiplicities[frozenset((c, t))] = pattern.c_intersection
        multiplicities[frozenset((t, "F1"))] = a
        if s:
            multiplicities[frozenset(("S", t))] = s
    for (i, p), (j, q) in combinations(list(enumerate(patterns)), 2):
        multiplicities[frozenset((ids[i], ids[j]))] = _section_product(p, q)

    graph = DualGraph.build(vertices, multiplicities)
    provenance = seed.provenance + tuple(f"section {t} contacts {p.contacts}" for t, p in zip(ids, patterns))
    return SearchState(LogPair(graph), provenance, None, tuple(patterns))


def case2_states() -> List[SearchState]:
    simple = SectionPattern
    return [
        section_state([simple((4,))]),
        section_state([simple((3, 1))]),
        section_state([simple((2, 2))]),
        section_state([simple((2, 1, 1))]),
        section_state([simple((1, 1, 1, 1))]),
        section_state([simple((6,), meets_sigma=True)]),
        section_state([simple((8,), degree=2)]),
        section_state([simple((4,)), simple((4,))]),
    ]


def _blow_contact(g: DualGraph, t: str, fibre: str, order: int) -> DualGraph:
    c = g.c_id
    last = fibre
    for _ in range(order):
        new_id = graph_service.next_vertex_id(g)
        g = graph_service.blow_up_subgraph(g, {c, t, last}, new_id)
        last = new_id
    return g


def separate_contacts(st: SearchState) -> SearchState:
    """Blow up every contact point of the single section with C, one fresh fibre per point."""
    if len(st.sections) != 1:
        raise OutOfRange(f"expected one section, got {len(st.sections)}")
    g = st.graph
    fibre = "F1"
    for n, order in enumerate(st.sections[0].contacts):
        if n:
            g, fibre = graph_service.add_fibre(g)
        g = _blow_contact(g, "T1", fibre, order)
    return st.child(g, f"separate T1 from C at {len(st.sections[0].contacts)} points")


def reduce_multiplicity_four(st: SearchState) -> SearchState:
    """Four blow-ups at the tangency of order 4; the result is S(A3+2A1) with another ruling."""
    if st.sections != (SectionPattern((4,)),):
        raise OutOfRange("reduction needs one simple section with a single contact of order 4")
    return replace(separate_contacts(st), s_c_label="A3+2A1")


def case2_case3_filters(st: SearchState) -> FilterDecision:
    sections = st.sections
    if not sections:
        return FilterDecision(True, "no exceptional section", st.c_squared)
    if len(sections) >= 2:
        return FilterDecision(False, REASON_CASE3, F2_C_SQUARED - separation_blowups(sections))

    pattern = sections[0]
    if pattern.degree > 1 or pattern.meets_sigma:
        bound = section_coefficient_bound(pattern.degree)
        logger.debug(f"section coefficient at most {bound}, so it cannot meet C on the resolution")
        return FilterDecision(False, REASON_MULTISECTION, F2_C_SQUARED - pattern.c_intersection)

    c2 = F2_C_SQUARED - blowups_on_c(pattern)
    if len(pattern.contacts) >= 3:
        return FilterDecision(False, REASON_THREE_POINTS, c2)

    contacts = tuple(sorted(pattern.contacts, reverse=True))
    if contacts == (3, 1):
        # the best point reachable on C is a smooth point on ½C_2
        best = CyclicQuotientType(2, 2, 2)
        if not pair_service.type_inequality(c2, best):
            return FilterDecision(False, REASON_3A2, c2)
        return FilterDecision(True, "(3,1) contact admits a point on C", c2)
    if contacts == (2, 2):
        separated = separate_contacts(st)
        if not pair_service.check_ex4(separated.pair):
            return FilterDecision(False, REASON_EX4, separated.c_squared)
        return FilterDecision(True, "(2,2) contact keeps (EX4)", separated.c_squared)

    reduced = reduce_multiplicity_four(st)
    return FilterDecision(False, REASON_REDUCES, reduced.c_squared, reduced)


def verify_p2_exclusion() -> PlaneExclusionReport:
    """
    P^2 with C a cubic and one (-1)-curve over each centre: a line meets C
    three times, and every standard boundary option contradicts the bound.
    """
    plane = DualGraph.build(
        [Vertex("C", 9, genus=1, role=VertexRole.BOUNDARY_CURVE), Vertex("L", 1)],
        {frozenset(("C", "L")): 3},
    )
    degree = intersection_service.dot(plane, Divisor({"C": SIX_SEVENTHS}, canonical=1), Divisor({"L": 1}))
    half = STANDARD_COEFFICIENTS[1]
    e1 = singularity_service.co_discrepancy(CyclicQuotientType(2, 1), SIX_SEVENTHS)
    report = PlaneExclusionReport(
        degree=degree,
        star_bound=-degree,
        two_points_lower=(half + half) * half,
        non_lt_lower=half,
        first_blowup_coefficient=SIX_SEVENTHS + e1 - 1,
        crepant_coefficients=(SIX_SEVENTHS, e1),
    )
    logger.info(f"P^2 exclusion: degree {degree}, first blow-up coefficient {report.first_blowup_coefficient}")
    return report
