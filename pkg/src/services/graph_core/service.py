"""
Dual graph calculus

Blow-ups of complete subgraphs, contraction of (-1)-curves, canonical
forms for deduplication and the curve constraints along C.
"""
import hashlib
import re
from collections import defaultdict
from dataclasses import replace
from fractions import Fraction
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Set, Tuple

import networkx as nx

from services.errors import MissingEdge, NotContractible, OutOfRange
from .models import CurveViolation, DualGraph, Vertex, VertexColour, VertexRole

HALF = Fraction(1, 2)

_GENERATED_ID = re.compile(r"^E(\d+)$")

CanonicalForm = Tuple[Tuple[Hashable, ...], Tuple[Tuple[int, int, int], ...]]


def next_vertex_id(g: DualGraph) -> str:
    used = [int(m.group(1)) for m in (_GENERATED_ID.match(i) for i in g.ids) if m]
    return f"E{max(used, default=0) + 1}"


def blow_up_subgraph(g: DualGraph, s: Iterable[str], new_id: Optional[str] = None) -> DualGraph:
    """
    Blow up the point where the curves of s meet.

    Args:
        g: the graph to blow up
        s: one to three vertex ids, pairwise adjacent; for three curves the
            caller guarantees they pass through one point
        new_id: identifier of the new (-1)-curve, generated when omitted

    Returns:
        A new graph with the exceptional curve joined simply to every curve of s.
    """
    s = sorted(set(s))
    if not 1 <= len(s) <= 3:
        raise OutOfRange(f"can only blow up 1 to 3 curves through a point, got {len(s)}")
    for vertex_id in s:
        g.vertex(vertex_id)
    for a, b in combinations(s, 2):
        if g.multiplicity(a, b) < 1:
            raise MissingEdge(f"{a} and {b} do not meet")

    new_id = new_id or next_vertex_id(g)
    if g.has_vertex(new_id):
        raise OutOfRange(f"vertex id {new_id} already in use")

    fibres = {g.vertex(v).fibre for v in s if g.vertex(v).fibre is not None}
    vertices = [replace(v, weight=v.weight - 1) if v.id in s else v for v in g.vertices]
    vertices.append(
        Vertex(
            id=new_id,
            weight=-1,
            role=VertexRole.EXCEPTIONAL,
            fibre=fibres.pop() if len(fibres) == 1 else None,
        )
    )
    multiplicities = g.multiplicities()
    for a, b in combinations(s, 2):
        multiplicities[frozenset((a, b))] -= 1
    for vertex_id in s:
        multiplicities[frozenset((vertex_id, new_id))] = 1
    return DualGraph.build(vertices, multiplicities, g.blowup_count + 1)


def contract_white(g: DualGraph, v: str) -> DualGraph:
    vertex = g.vertex(v)
    if vertex.weight != -1 or vertex.genus != 0 or vertex.nodal:
        raise NotContractible(f"{v} is not a smooth rational (-1)-curve")
    if g.blowup_count < 1:
        raise NotContractible(f"{v} would contract a graph with no blow-up left to undo")

    neighbours = g.neighbours(v)
    vertices = []
    for other in g.vertices:
        if other.id == v:
            continue
        mult = neighbours.get(other.id, 0)
        vertices.append(replace(other, weight=other.weight + mult * mult) if mult else other)

    multiplicities = {pair: m for pair, m in g.multiplicities().items() if v not in pair}
    for a, b in combinations(sorted(neighbours), 2):
        pair = frozenset((a, b))
        multiplicities[pair] = multiplicities.get(pair, 0) + neighbours[a] * neighbours[b]
    return DualGraph.build(vertices, multiplicities, g.blowup_count - 1)


def add_fibre(g: DualGraph) -> Tuple[DualGraph, str]:
    """Instantiate a fresh smooth fibre: square, meets the minimal section once and C twice."""
    index = max(g.fibres(), default=0) + 1
    fibre_id = f"F{index}"
    vertices = list(g.vertices) + [Vertex(id=fibre_id, weight=0, role=VertexRole.FIBRE, fibre=index)]
    multiplicities = g.multiplicities()
    for v in g.vertices:
        if v.section_degree > 0:
            multiplicities[frozenset((v.id, fibre_id))] = v.section_degree
    return DualGraph.build(vertices, multiplicities, g.blowup_count), fibre_id


def black_components(g: DualGraph) -> List[Set[str]]:
    graph = g.to_networkx().subgraph(g.black_ids())
    return sorted((set(c) for c in nx.connected_components(graph)), key=lambda c: sorted(c))


def chain_from(g: DualGraph, component: Set[str], start: str) -> Optional[List[str]]:
    """The component read as a chain beginning at start, or None if it is not a chain with start as an end."""
    order = [start]
    previous = None
    current = start
    while True:
        inside = {u: m for u, m in g.neighbours(current).items() if u in component}
        if any(m != 1 for m in inside.values()):
            return None
        onward = [u for u in inside if u != previous]
        if previous is None and len(onward) > 1:
            return None
        if previous is not None and len(inside) > 2:
            return None
        if not onward:
            break
        previous, current = current, onward[0]
        if current in order:
            return None
        order.append(current)
    return order if len(order) == len(component) else None


# Canonical forms


def _initial_key(v: Vertex, label: str) -> Tuple[Hashable, ...]:
    return (v.role.value, v.weight, v.genus, int(v.nodal), label)


def _rank(keys: Mapping[str, Hashable]) -> Dict[str, int]:
    ranking = {key: rank for rank, key in enumerate(sorted(set(keys.values())))}
    return {v: ranking[keys[v]] for v in keys}


def _refine(adjacency: Mapping[str, Mapping[str, int]], colours: Dict[str, int]) -> Dict[str, int]:
    while True:
        signatures = {
            v: (colours[v], tuple(sorted((colours[u], m) for u, m in adjacency[v].items())))
            for v in colours
        }
        refined = _rank(signatures)
        if len(set(refined.values())) == len(set(colours.values())):
            return refined
        colours = refined


def _search(adjacency, colours, keys) -> CanonicalForm:
    colours = _refine(adjacency, colours)
    classes = defaultdict(list)
    for v, c in colours.items():
        classes[c].append(v)
    ambiguous = [c for c, members in classes.items() if len(members) > 1]
    if not ambiguous:
        order = sorted(colours, key=colours.get)
        position = {v: i for i, v in enumerate(order)}
        edges = sorted(
            (min(position[a], position[b]), max(position[a], position[b]), m)
            for a in adjacency
            for b, m in adjacency[a].items()
            if a < b
        )
        return tuple(keys[v] for v in order), tuple(edges)

    target = min(ambiguous)
    best = None
    for chosen in sorted(classes[target]):
        split = {
            u: 2 * c + (1 if c == target and u != chosen else 0)
            for u, c in colours.items()
        }
        candidate = _search(adjacency, _rank(split), keys)
        if best is None or candidate < best:
            best = candidate
    return best


def canonical_form(g: DualGraph, labels: Optional[Mapping[str, str]] = None) -> CanonicalForm:
    """
    Encoding equal for two graphs iff a role, weight, genus, nodal and
    multiplicity preserving isomorphism exists. Optional labels (boundary
    coefficients) are part of the vertex colour.
    """
    labels = labels or {}
    keys = {v.id: _initial_key(v, labels.get(v.id, "")) for v in g.vertices}
    adjacency = {v: g.neighbours(v) for v in g.ids}
    return _search(adjacency, _rank(keys), keys)


def form_digest(form: CanonicalForm) -> str:
    return hashlib.sha1(repr(form).encode()).hexdigest()[:12]


def are_isomorphic(
    g: DualGraph,
    h: DualGraph,
    labels_g: Optional[Mapping[str, str]] = None,
    labels_h: Optional[Mapping[str, str]] = None,
) -> bool:
    first, second = g.to_networkx(), h.to_networkx()
    for graph, labels in ((first, labels_g or {}), (second, labels_h or {})):
        for node in graph.nodes:
            graph.nodes[node]["label"] = labels.get(node, "")

    def node_match(a, b):
        return all(a[k] == b[k] for k in ("role", "weight", "genus", "nodal", "label"))

    def edge_match(a, b):
        return a["multiplicity"] == b["multiplicity"]

    return nx.is_isomorphic(first, second, node_match=node_match, edge_match=edge_match)


def surface_isomorphism(g: DualGraph, h: DualGraph) -> Optional[Dict[str, str]]:
    """A vertex map from g onto h preserving weights, genera, nodes, multiplicities and C; None if there is none."""
    c = VertexRole.BOUNDARY_CURVE.value

    def node_match(a, b):
        same = all(a[k] == b[k] for k in ("weight", "genus", "nodal"))
        return same and (a["role"] == c) == (b["role"] == c)

    def edge_match(a, b):
        return a["multiplicity"] == b["multiplicity"]

    matcher = nx.algorithms.isomorphism.GraphMatcher(
        g.to_networkx(), h.to_networkx(), node_match=node_match, edge_match=edge_match
    )
    return next(matcher.isomorphisms_iter(), None)


# Curve constraints along C


def validate_curve_constraints(
    g: DualGraph,
    boundary: Optional[Mapping[str, Fraction]] = None,
    node_on: Optional[str] = None,
) -> List[CurveViolation]:
    """
    Check the configuration along C against the allowed local pictures.

    Args:
        g: graph carrying the boundary curve C
        boundary: coefficients of the boundary components other than C
        node_on: the curve through the node of a nodal C, when the caller
            knows one passes there

    Returns:
        The violations found; an empty list means the configuration is allowed.
    """
    c = g.c_id
    if c is None:
        return [CurveViolation("no_boundary_curve", (), "graph has no unique boundary curve C")]
    components = {v: Fraction(x) for v, x in (boundary or {}).items() if x > 0}
    violations = []

    if g.vertex(c).nodal and node_on is not None:
        if g.vertex(node_on).colour == VertexColour.BLACK or node_on in components:
            violations.append(
                CurveViolation("node_position", (c, node_on), f"node of C lies on {node_on}")
            )

    for component, coefficient in sorted(components.items()):
        mult = g.multiplicity(c, component)
        if mult >= 2 and not (mult == 2 and coefficient == HALF):
            violations.append(
                CurveViolation(
                    "component_contact",
                    (c, component),
                    f"{component} meets C with multiplicity {mult} at coefficient {coefficient}",
                )
            )

    neighbours_of_c = g.neighbours(c)
    for component in black_components(g):
        contacts = sorted(v for v in component if v in neighbours_of_c)
        if not contacts:
            continue
        members = tuple(sorted(component))
        if len(contacts) > 1:
            violations.append(
                CurveViolation("chain_contact", tuple(contacts), f"C meets {len(contacts)} curves of one point")
            )
            continue
        start = contacts[0]
        if neighbours_of_c[start] != 1:
            violations.append(
                CurveViolation("non_normal", (c, start), f"C meets {start} with multiplicity {neighbours_of_c[start]}")
            )
            continue
        chain = chain_from(g, component, start)
        if chain is None:
            is_chain = any(chain_from(g, component, v) for v in component)
            kind = "not_end" if is_chain else "non_chain"
            violations.append(CurveViolation(kind, members, f"C meets {start} of {members}"))
            continue

        through = sorted(
            comp for comp in components if any(g.multiplicity(comp, v) for v in component)
        )
        if len(through) > 1:
            violations.append(
                CurveViolation("two_components", tuple(through), f"{through} pass through the point of {start}")
            )
        for comp in through:
            touched = [v for v in component if g.multiplicity(comp, v)]
            if touched != [chain[-1]] or g.multiplicity(comp, chain[-1]) != 1:
                violations.append(
                    CurveViolation(
                        "component_end",
                        (comp,) + tuple(touched),
                        f"{comp} must meet the far end {chain[-1]} of the chain normally",
                    )
                )
    return violations
