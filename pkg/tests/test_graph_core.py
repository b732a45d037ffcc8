from dataclasses import replace
from fractions import Fraction

import pytest

from services.errors import MissingEdge, NotContractible, OutOfRange
from services.graph_core import service
from services.graph_core.models import DualGraph, VertexColour
from services.enumeration.golden import build_surface


def relabel(g: DualGraph, mapping) -> DualGraph:
    vertices = [replace(v, id=mapping.get(v.id, v.id)) for v in g.vertices]
    multiplicities = {
        frozenset(mapping.get(x, x) for x in pair): m for pair, m in g.multiplicities().items()
    }
    return DualGraph.build(vertices, multiplicities, g.blowup_count)


def test_seed_colours(seed):
    g = seed.graph
    assert g.c_id == "C"
    assert g.vertex("S").colour == VertexColour.BLACK
    assert g.vertex("F1").colour == VertexColour.SQUARE
    assert g.black_ids() == ["S"]
    assert g.white_ids() == []


def test_blow_up_tangency(seed):
    g = service.blow_up_subgraph(seed.graph, {"C", "F1"})
    assert g.blowup_count == 1
    assert g.weight("C") == 7
    assert g.weight("F1") == -1
    assert g.weight("E1") == -1
    assert g.multiplicity("C", "F1") == 1
    assert g.multiplicity("E1", "C") == 1 and g.multiplicity("E1", "F1") == 1
    assert g.vertex("E1").fibre == 1


def test_blow_up_then_contract_restores_graph(seed):
    blown = service.blow_up_subgraph(seed.graph, {"C", "F1"})
    restored = service.contract_white(blown, "E1")
    assert restored.blowup_count == 0
    assert restored.weight("C") == 8
    assert restored.multiplicity("C", "F1") == 2
    assert service.canonical_form(restored) == service.canonical_form(seed.graph)


def test_blow_up_errors(seed):
    with pytest.raises(MissingEdge):
        service.blow_up_subgraph(seed.graph, {"C", "S"})
    with pytest.raises(OutOfRange):
        service.blow_up_subgraph(seed.graph, set())
    with pytest.raises(OutOfRange):
        service.blow_up_subgraph(seed.graph, {"C"}, new_id="S")


def test_contract_needs_a_minus_one_curve(seed):
    with pytest.raises(NotContractible):
        service.contract_white(seed.graph, "S")
    with pytest.raises(NotContractible):
        service.contract_white(seed.graph, "C")


def test_contract_refuses_a_graph_with_no_blow_up(make_graph):
    vertices, edges = [("C", 3), ("E1", -1)], [("C", "E1", 1)]
    with pytest.raises(NotContractible):
        service.contract_white(make_graph(vertices, edges), "E1")
    contracted = service.contract_white(make_graph(vertices, edges, blowup_count=1), "E1")
    assert contracted.weight("C") == 4
    assert contracted.blowup_count == 0


def test_next_vertex_id(seed):
    assert service.next_vertex_id(seed.graph) == "E1"
    g = service.blow_up_subgraph(seed.graph, {"F1"}, "E4")
    assert service.next_vertex_id(g) == "E5"


def test_add_fibre(seed):
    g, fibre = service.add_fibre(seed.graph)
    assert fibre == "F2"
    assert g.weight("F2") == 0
    assert g.multiplicity("C", "F2") == 2
    assert g.multiplicity("S", "F2") == 1
    assert g.fibres() == [1, 2]


def test_black_components_and_chain():
    g = build_surface("R2")
    assert service.black_components(g) == [{"E1"}, {"F1", "S"}]
    assert service.chain_from(g, {"F1", "S"}, "F1") == ["F1", "S"]


def test_canonical_form_ignores_ids():
    g = build_surface("R10")
    mapping = {v: f"x{i}" for i, v in enumerate(reversed(g.ids)) if v != "C"}
    h = relabel(g, mapping)
    assert service.canonical_form(g) == service.canonical_form(h)
    assert service.are_isomorphic(g, h)
    assert service.form_digest(service.canonical_form(g)) == service.form_digest(service.canonical_form(h))


def test_canonical_form_separates_surfaces():
    assert service.canonical_form(build_surface("R4")) != service.canonical_form(build_surface("R5"))
    assert not service.are_isomorphic(build_surface("R4"), build_surface("R5"))


def test_canonical_form_sees_chain_orientation(make_graph):
    edges = [("C", "A", 1), ("A", "B", 1)]
    two_three = make_graph([("C", 1), ("A", -2), ("B", -3)], edges)
    three_two = make_graph([("C", 1), ("A", -3), ("B", -2)], edges)
    assert service.canonical_form(two_three) != service.canonical_form(three_two)
    assert not service.are_isomorphic(two_three, three_two)


def test_surface_isomorphism_maps_onto_relabelled_copy():
    g = build_surface("G2")
    mapping = {v: v.lower() for v in g.ids if v != "C"}
    h = relabel(g, mapping)
    found = service.surface_isomorphism(g, h)
    assert found is not None
    assert found["C"] == "C"
    assert all(g.weight(a) == h.weight(b) for a, b in found.items())
    assert service.surface_isomorphism(g, build_surface("G4")) is None


def test_curve_constraints_accept_table_surfaces():
    for name in ("G1", "R2", "G4", "R18"):
        assert service.validate_curve_constraints(build_surface(name)) == []


def test_curve_constraints_flag_tangent_component(make_graph):
    g = make_graph([("C", 4), ("A", -2), ("L", -1)], [("C", "A", 2), ("A", "L", 1)])
    kinds = [v.kind for v in service.validate_curve_constraints(g)]
    assert kinds == ["non_normal"]


def test_curve_constraints_flag_chain_met_in_the_middle(make_graph):
    g = make_graph(
        [("C", 4), ("A", -2), ("B", -2), ("D", -2)],
        [("C", "B", 1), ("A", "B", 1), ("B", "D", 1)],
    )
    kinds = [v.kind for v in service.validate_curve_constraints(g)]
    assert kinds == ["not_end"]


def test_curve_constraints_component_contact(make_graph):
    g = make_graph([("C", 4), ("L", -1)], [("C", "L", 2)])
    assert service.validate_curve_constraints(g, {"L": Fraction(1, 2)}) == []
    kinds = [v.kind for v in service.validate_curve_constraints(g, {"L": Fraction(2, 3)})]
    assert kinds == ["component_contact"]
