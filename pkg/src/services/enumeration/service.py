"""
Enumeration

Breadth-first search over blow-ups of F_2 in the r = 0 regime. Moves are
generated raw, deduplicated by canonical form, then assessed; states that
survive are expanded further and later offered boundary assignments.
"""
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

import logging

from services.errors import ClassificationError, NotElliptic
from services.graph_core import service as graph_service
from services.graph_core.models import DualGraph, Vertex, VertexColour, VertexRole
from services.intersection_theory import service as intersection_service
from services.pair_predicates import service as pair_service
from services.pair_predicates.models import SIX_SEVENTHS, STANDARD_COEFFICIENTS, LogPair
from .models import RejectionLog, SearchResult, SearchState

logger = logging.getLogger(__name__)

SEED_LABEL = "Q2"
TYPE_II_LABEL = "S7"
TYPE1_NEXT = {"A1+A2": "A4", "A4": "D5", "D5": "E6", "A3+2A1": "A5+A1"}
FIBRE_NEXT = {SEED_LABEL: "A1+A2", "A1+A2": "A3+2A1", "A4": "A5+A1"}

REASON_NOT_NEGATIVE_DEFINITE = "exceptional curves not negative definite"
REASON_NON_LC = "non log canonical point on C"
REASON_CURVE_CONSTRAINT = "C meets a singular point away from the end of a chain"
REASON_EX4 = "violates (EX4)"
REASON_TYPE_INEQUALITY = "(6 - C^2)m > 7 - k"
REASON_EX1 = "K + 6/7C is not anti-nef (violates (EX1))"
REASON_EX3 = "not 1/7-log terminal (violates (EX3))"
REASON_SMOOTH_FIBRE = "smooth fibre as a component gives positive degree"


def seed_f2() -> SearchState:
    """F_2 with its (-2)-section Σ, C in |2Σ + 4F| and one fibre."""
    vertices = [
        Vertex("C", 8, genus=1, role=VertexRole.BOUNDARY_CURVE, section_degree=2),
        Vertex("S", -2, role=VertexRole.MINIMAL_SECTION, section_degree=1),
        Vertex("F1", 0, role=VertexRole.FIBRE, fibre=1),
    ]
    multiplicities = {frozenset(("C", "F1")): 2, frozenset(("S", "F1")): 1}
    graph = DualGraph.build(vertices, multiplicities)
    return SearchState(LogPair(graph), provenance=("seed F2",), s_c_label=SEED_LABEL)


def _fresh_fibre(g: DualGraph) -> Tuple[DualGraph, str]:
    for v in g.vertices:
        if v.role == VertexRole.FIBRE and v.weight == 0 and len(g.fibre_ids(v.fibre)) == 1:
            return g, v.id
    return graph_service.add_fibre(g)


def _blow_up(g: DualGraph, s) -> Tuple[DualGraph, str]:
    new_id = graph_service.next_vertex_id(g)
    return graph_service.blow_up_subgraph(g, s, new_id), new_id


def initial_fibre_moves(st: SearchState) -> List[SearchState]:
    """
    Two blow-ups at a point of a fresh fibre F: (I) at the tangency of C and
    F and then where C, F and the new curve meet, (II) at the tangency and
    then on F away from C, (III) twice on F away from C.
    """
    g, f = _fresh_fibre(st.graph)
    c = st.pair.c
    tangent, x1 = _blow_up(g, {c, f})
    first, _ = _blow_up(tangent, {c, f, x1})
    second, _ = _blow_up(tangent, {f, x1})
    off_c, y1 = _blow_up(g, {f})
    third, _ = _blow_up(off_c, {f, y1})

    seeded = st.s_c_label == SEED_LABEL
    return [
        st.child(first, f"(I) on {f}", FIBRE_NEXT.get(st.s_c_label, st.s_c_label)),
        st.child(second, f"(II) on {f}", TYPE_II_LABEL if seeded else None),
        st.child(third, f"(III) on {f}", None),
    ]


def _white_in_fibres(g: DualGraph) -> List[str]:
    return [v for v in g.white_ids() if g.vertex(v).fibre is not None]


def _pruned(children: List[SearchState], log: Optional[RejectionLog]) -> List[SearchState]:
    kept = []
    for child in children:
        reason = assess(child)
        if reason is None:
            kept.append(child)
        elif log is not None:
            log.record(reason, child.provenance)
    return kept


def extend_type1(st: SearchState, prune: bool = False, log: Optional[RejectionLog] = None) -> List[SearchState]:
    """Blow up the point where C meets a (-1)-curve of a fibre."""
    g = st.graph
    c = st.pair.c
    children = []
    for w in _white_in_fibres(g):
        if g.multiplicity(c, w) != 1:
            continue
        blown, _ = _blow_up(g, {c, w})
        children.append(st.child(blown, f"type 1 at C-{w}", TYPE1_NEXT.get(st.s_c_label, st.s_c_label)))
    return _pruned(children, log) if prune else children


def extend_type2(st: SearchState, prune: bool = False, log: Optional[RejectionLog] = None) -> List[SearchState]:
    """
    Blow up a point of a (-1)-curve away from C: the edge to a neighbouring
    black curve, or a general point of the (-1)-curve itself.
    """
    g = st.graph
    children = []
    for w in _white_in_fibres(g):
        for t, mult in sorted(g.neighbours(w).items()):
            if mult == 1 and g.vertex(t).colour == VertexColour.BLACK:
                blown, _ = _blow_up(g, {w, t})
                children.append(st.child(blown, f"type 2 at {w}-{t}"))
        blown, _ = _blow_up(g, {w})
        children.append(st.child(blown, f"type 2 on {w}"))
    return _pruned(children, log) if prune else children


def expand(st: SearchState) -> List[SearchState]:
    return initial_fibre_moves(st) + extend_type1(st) + extend_type2(st)


def _category(violation: str) -> str:
    return violation.split(":", 1)[0]


def assess(st: SearchState) -> Optional[str]:
    """The first reason the state cannot lie under a pair, or None."""
    p = st.pair
    g = p.graph
    if g.black_ids() and not intersection_service.exceptional_matrix(g).is_negative_definite():
        return REASON_NOT_NEGATIVE_DEFINITE

    violations = graph_service.validate_curve_constraints(g, p.boundary)
    if violations:
        if any(v.kind == "non_normal" for v in violations):
            return REASON_NON_LC
        return REASON_CURVE_CONSTRAINT

    if not pair_service.check_ex4(p):
        return REASON_EX4

    crepant = intersection_service.crepant_pullback(p)
    if crepant.non_log_canonical:
        return REASON_NON_LC

    bounds = pair_service.lemma22_bounds(p, crepant)
    if bounds:
        return _category(bounds[0])

    c2 = g.weight(p.c)
    for point in pair_service.singular_points_on_c(p, crepant):
        if point.is_singular and 3 <= c2 <= 6 and not pair_service.type_inequality(c2, point.type):
            return REASON_TYPE_INEQUALITY

    if not pair_service.check_ex1(p):
        return REASON_EX1
    if not pair_service.check_ex3(p, crepant):
        return REASON_EX3
    return None


def _keyed_children(st: SearchState):
    return [(graph_service.canonical_form(child.graph), child) for child in expand(st)]


def search(parallelism: int = 1, max_states: int = 500) -> SearchResult:
    """
    Breadth-first by blow-up count from the F_2 seed.

    Children are merged in frontier order whatever the number of workers,
    so the accepted list is the same for every parallelism degree.
    """
    seed = seed_f2()
    seen = {graph_service.canonical_form(seed.graph)}
    pending: Dict[int, List[SearchState]] = defaultdict(list)
    pending[0].append(seed)
    accepted = [seed]
    log = RejectionLog()
    visited, duplicates = 1, 0

    executor = ThreadPoolExecutor(max_workers=parallelism) if parallelism > 1 else None
    try:
        while pending:
            level = min(pending)
            frontier = pending.pop(level)
            if executor is not None:
                expansions = list(executor.map(_keyed_children, frontier))
            else:
                expansions = [_keyed_children(st) for st in frontier]

            kept = 0
            for children in expansions:
                for form, child in children:
                    if form in seen:
                        duplicates += 1
                        continue
                    seen.add(form)
                    visited += 1
                    if visited > max_states:
                        raise ClassificationError(
                            f"search visited more than {max_states} states", code="state_bound"
                        )
                    reason = assess(child)
                    if reason is not None:
                        logger.debug(f"rejected {' > '.join(child.provenance)}: {reason}")
                        log.record(reason, child.provenance)
                        continue
                    accepted.append(child)
                    pending[child.graph.blowup_count].append(child)
                    kept += 1
            logger.info(f"level {level}: expanded {len(frontier)} states, kept {kept}")
    finally:
        if executor is not None:
            executor.shutdown()

    logger.info(f"search done: {len(accepted)} accepted, {visited} visited, {duplicates} duplicates")
    return SearchResult(accepted, visited, duplicates, log)


def smooth_fibre_degree(st: SearchState, coefficient: Fraction = Fraction(1, 2)) -> Fraction:
    """(K + 6/7C + cF)·C with F a fresh smooth fibre; positive whenever C^2 is at most 6 on S."""
    g, f = graph_service.add_fibre(st.graph)
    return pair_service.c_degree(LogPair(g, SIX_SEVENTHS, {f: coefficient}))


def _admissible(p: LogPair) -> bool:
    if graph_service.validate_curve_constraints(p.graph, p.boundary):
        return False
    try:
        if not pair_service.check_ex2_elliptic(p):
            return False
    except NotElliptic:
        return False
    if not pair_service.check_ex1(p):
        return False
    crepant = intersection_service.crepant_pullback(p)
    if crepant.non_log_canonical or pair_service.lemma22_bounds(p, crepant):
        return False
    return pair_service.check_ex3(p, crepant) and pair_service.delta(p, crepant) == 1


def assign_boundaries(st: SearchState, log: Optional[RejectionLog] = None) -> List[LogPair]:
    """
    Every admissible B_1 on the (-1)-curves with standard coefficients, one
    pair per distinct (S, B). The seed is the cone and is handled apart.
    """
    g = st.graph
    if g.blowup_count == 0:
        return []
    if log is not None and smooth_fibre_degree(st) > 0:
        log.record(REASON_SMOOTH_FIBRE, st.provenance)

    candidates = g.white_ids()
    pairs, forms = [], set()
    for values in product(STANDARD_COEFFICIENTS, repeat=len(candidates)):
        boundary = {v: x for v, x in zip(candidates, values) if x}
        p = LogPair(g, SIX_SEVENTHS, boundary)
        if not _admissible(p):
            continue
        form = pair_service.pair_form(p)
        if form in forms:
            continue
        forms.add(form)
        pairs.append(p)
    logger.debug(f"{' > '.join(st.provenance)}: {len(pairs)} boundary options")
    return pairs
