"""
Intersection theory on the resolution

Everything is computed from the weighted dual graph: K·v by adjunction,
curve products from weights and multiplicities, and pullbacks by solving
the exceptional intersection matrix exactly.
"""
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import logging

from services.errors import NonLogCanonical, SingularSystem
from services.graph_core.models import DualGraph
from services.pair_predicates.models import LogPair
from . import linear_algebra
from .models import CrepantData, Divisor, IntersectionMatrix, RelationCheck, RelationReport

logger = logging.getLogger(__name__)

# K^2 of a Hirzebruch surface
HIRZEBRUCH_K_SQUARED = 8


def intersection_matrix(g: DualGraph, subset: Iterable[str]) -> IntersectionMatrix:
    ids = tuple(subset)
    entries = tuple(
        tuple(g.weight(a) if a == b else g.multiplicity(a, b) for b in ids) for a in ids
    )
    return IntersectionMatrix(ids, entries)


def canonical_degree(g: DualGraph, v: str) -> int:
    vertex = g.vertex(v)
    return 2 * vertex.arithmetic_genus - 2 - vertex.weight


def canonical_self_intersection(g: DualGraph) -> int:
    """K^2 of S^min for graphs seeded from a Hirzebruch surface."""
    return HIRZEBRUCH_K_SQUARED - g.blowup_count


def dot(g: DualGraph, first: Divisor, second: Divisor) -> Fraction:
    """Intersection of two divisors on S^min."""
    total = first.canonical * second.canonical * canonical_self_intersection(g) if (
        first.canonical and second.canonical
    ) else Fraction(0)
    for v, c in first.components.items():
        if second.canonical:
            total += c * second.canonical * canonical_degree(g, v)
        for w, d in second.components.items():
            total += c * d * (g.weight(v) if v == w else g.multiplicity(v, w))
    if first.canonical:
        for w, d in second.components.items():
            total += first.canonical * d * canonical_degree(g, w)
    return total


def exceptional_matrix(g: DualGraph) -> IntersectionMatrix:
    return intersection_matrix(g, g.black_ids())


def pullback(g: DualGraph, divisor: Divisor) -> Dict[str, Fraction]:
    """
    Coefficients x_j with (D + Σ x_j E_j)·E_i = 0 for every exceptional E_i.

    Only the non-exceptional part of the divisor is pulled back; any
    coefficients it carries on exceptional curves are ignored.
    """
    exceptional = g.black_ids()
    if not exceptional:
        return {}
    matrix = exceptional_matrix(g)
    if not matrix.is_negative_definite():
        raise SingularSystem(f"exceptional curves {exceptional} are not negative definite")
    on_surface = Divisor(
        {v: c for v, c in divisor.components.items() if v not in exceptional}, divisor.canonical
    )
    rhs = [-dot(g, on_surface, Divisor({e: 1})) for e in exceptional]
    solution = linear_algebra.solve(matrix.array, rhs)
    return {e: Fraction(x) for e, x in zip(exceptional, solution)}


def pulled_back(g: DualGraph, divisor: Divisor) -> Divisor:
    """f^*f_*D as a divisor on S^min."""
    exceptional = set(g.black_ids())
    on_surface = Divisor(
        {v: c for v, c in divisor.components.items() if v not in exceptional}, divisor.canonical
    )
    return on_surface + Divisor(pullback(g, divisor))


def log_boundary(p: LogPair) -> Divisor:
    """K + bC + Σ b_i C_i."""
    components = {p.c: p.b}
    components.update(p.boundary)
    return Divisor(components, canonical=1)


def crepant_coefficients(g: DualGraph, coefficients: Mapping[str, Fraction]) -> CrepantData:
    """Crepant data of K + Σ c_v v for an arbitrary (not necessarily standard) boundary."""
    return CrepantData(pullback(g, Divisor(dict(coefficients), canonical=1)))


def crepant_pullback(p: LogPair, raise_non_lc: bool = False) -> CrepantData:
    """
    Solve (K + bC + Σ b_i C_i + Σ e_j E_j)·E_i = 0 over the exceptional curves.

    Args:
        p: the pair on the resolution
        raise_non_lc: raise NonLogCanonical instead of returning data with e_j > 1

    Returns:
        The co-discrepancies e_j keyed by exceptional vertex id.
    """
    data = CrepantData(pullback(p.graph, log_boundary(p)))
    if data.non_log_canonical:
        logger.debug(f"non log canonical curves {data.non_log_canonical} for b={p.b}")
        if raise_non_lc:
            raise NonLogCanonical(f"co-discrepancy above 1 on {data.non_log_canonical}")
    return data


def degree_vs_curve(p: LogPair, divisor: Divisor, test_curve: str) -> Fraction:
    """
    Intersection number of a divisor with a tracked curve.

    A divisor with exceptional components is read on the resolution as given;
    otherwise it is a divisor on S and its crepant pullback is used.
    """
    exceptional = set(p.exceptional_ids)
    curve = Divisor({test_curve: 1})
    if any(v in exceptional for v in divisor.components):
        return dot(p.graph, divisor, curve)
    return dot(p.graph, pulled_back(p.graph, divisor), curve)


def intersect_on_surface(p: LogPair, first: Divisor, second: Divisor) -> Fraction:
    """(f_*D1)·(f_*D2) on S, computed as f^*D1 · D2 by the projection formula."""
    exceptional = set(p.exceptional_ids)
    return dot(p.graph, pulled_back(p.graph, first), second.restricted(
        [v for v in second.components if v not in exceptional]
    ))


def pushforward_self_intersection(p: LogPair, v: str) -> Fraction:
    curve = Divisor({v: 1})
    return intersect_on_surface(p, curve, curve)


def is_cartier(p: LogPair, divisor: Divisor) -> bool:
    pulled = pulled_back(p.graph, divisor)
    coefficients = list(pulled.components.values()) + [pulled.canonical]
    return all(c.denominator == 1 for c in coefficients)


def verify_relations(p: LogPair, relations: Sequence[Tuple[str, Divisor, Fraction]]) -> RelationReport:
    """
    Check claimed relations D_i ≡ q_i H on S without constructing H.

    Every product D_i·D_j must equal q_i q_j H^2 for one common H^2 > 0,
    which pins both the degrees against C and the self-intersections.
    """
    products = {}
    for (name_a, d_a, _), (name_b, d_b, _) in combinations_with_replacement(relations, 2):
        products[(name_a, name_b)] = intersect_on_surface(p, d_a, d_b)

    candidates = {products[(name, name)] / (q * q) for name, _, q in relations if q}
    h_squared = candidates.pop() if len(candidates) == 1 else None
    if h_squared is None:
        logger.warning(f"relations give inconsistent H^2 candidates {sorted(candidates)}")

    q_of = {name: q for name, _, q in relations}
    checks = tuple(
        RelationCheck(
            a,
            b,
            product,
            q_of[a] * q_of[b] * h_squared if h_squared is not None else None,
        )
        for (a, b), product in products.items()
    )
    return RelationReport(h_squared, checks)
