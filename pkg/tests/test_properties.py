from dataclasses import replace
from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.enumeration import service as enumeration_service
from services.graph_core import service as graph_service
from services.graph_core.models import DualGraph, Vertex, VertexRole
from services.intersection_theory import service as intersection_service
from services.pair_predicates.models import LogPair
from services.singularities import service as singularity_service
from services.singularities.models import CyclicQuotientType

ORACLE_ENTRIES = range(2, 10)
ORACLE_LENGTH = 6


def _coprime_pairs(max_m: int, max_k: int = None):
    for m in range(2, max_m + 1):
        for k in range(1, min(m - 1, max_k or m) + 1):
            if gcd(m, k) == 1:
                yield m, k


@pytest.fixture(scope="module")
def chain_oracle():
    """(m, k) for every chain with entries 2..9 and at most six curves, by evaluating continuants."""
    table = {}
    for length in range(1, ORACLE_LENGTH + 1):
        for entries in product(ORACLE_ENTRIES, repeat=length):
            # w1 - 1/(w2 - ...) = p/q, evaluated from the far end
            p, q = entries[-1], 1
            for w in reversed(entries[:-1]):
                p, q = w * p - q, p
            table[(p, p - q)] = tuple(-w for w in entries)
    return table


def test_hj_expand_matches_every_short_chain(chain_oracle):
    for (m, k), weights in chain_oracle.items():
        if m <= 200:
            assert singularity_service.hj_expand(m, k).weights == weights


def test_hj_round_trip_for_every_type_up_to_200(chain_oracle):
    for m, k in _coprime_pairs(200):
        chain = singularity_service.hj_expand(m, k)
        assert singularity_service.hj_contract(chain) == (m, k)
        assert all(w <= -2 for w in chain.weights)
        if len(chain.weights) <= ORACLE_LENGTH and all(-w in ORACLE_ENTRIES for w in chain.weights):
            assert chain_oracle[(m, k)] == chain.weights


def _chain_on_c(m: int, k: int, b: Fraction) -> LogPair:
    weights = singularity_service.hj_expand(m, k).weights
    ids = [f"E{i}" for i in range(1, len(weights) + 1)]
    vertices = [Vertex("C", 1, genus=1, role=VertexRole.BOUNDARY_CURVE)]
    vertices += [Vertex(i, w) for i, w in zip(ids, weights)]
    edges = {frozenset(("C", ids[0])): 1}
    edges.update({frozenset((a, b_)): 1 for a, b_ in zip(ids, ids[1:])})
    return LogPair(DualGraph.build(vertices, edges), b)


@pytest.mark.parametrize("b", [Fraction(6, 7), Fraction(9, 10)])
def test_mld_formula_matches_crepant_pullback(b):
    for m, k in _coprime_pairs(60, max_k=6):
        crepant = intersection_service.crepant_pullback(_chain_on_c(m, k, b))
        assert crepant.log_discrepancy("E1") == singularity_service.mld(CyclicQuotientType(m, k), b)


def _triangles(g: DualGraph):
    return [s for s in combinations(g.ids, 3) if all(g.multiplicity(a, b) for a, b in combinations(s, 2))]


def _random_blow_up(g: DualGraph, data):
    choices = [(v,) for v in g.ids] + [e.endpoints for e in g.edges] + _triangles(g)
    s = data.draw(st.sampled_from(choices))
    return graph_service.blow_up_subgraph(g, s), s


@given(st.data())
@settings(max_examples=1000, deadline=None)
def test_blow_up_then_contract_is_identity(data):
    g = enumeration_service.seed_f2().graph
    for _ in range(data.draw(st.integers(min_value=1, max_value=6))):
        blown, s = _random_blow_up(g, data)
        new_id = sorted(set(blown.ids) - set(g.ids))[0]

        assert sum(g.weight(v) for v in s) - sum(blown.weight(v) for v in s) == len(s)
        inside = list(combinations(s, 2))
        dropped = sum(g.multiplicity(a, b) - blown.multiplicity(a, b) for a, b in inside)
        assert dropped == comb(len(s), 2)

        restored = graph_service.contract_white(blown, new_id)
        assert graph_service.canonical_form(restored) == graph_service.canonical_form(g)
        assert restored.blowup_count == g.blowup_count
        g = blown


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_canonical_form_is_invariant_under_relabelling(data):
    g = enumeration_service.seed_f2().graph
    for _ in range(data.draw(st.integers(min_value=0, max_value=5))):
        g, _ = _random_blow_up(g, data)
    ids = [i for i in g.ids if i != "C"]
    shuffled = data.draw(st.permutations(ids))
    mapping = {a: f"v{b}" for a, b in zip(ids, shuffled)}
    vertices = [replace(v, id=mapping.get(v.id, v.id)) for v in g.vertices]
    multiplicities = {frozenset(mapping.get(x, x) for x in pair): m for pair, m in g.multiplicities().items()}
    h = DualGraph.build(vertices, multiplicities, g.blowup_count)
    assert graph_service.canonical_form(g) == graph_service.canonical_form(h)
    assert graph_service.are_isomorphic(g, h)


def test_one_seventh_lt_series_covers_every_type():
    series = singularity_service.one_seventh_lt_series()
    for m, k in _coprime_pairs(100, max_k=6):
        assert singularity_service.series_of(CyclicQuotientType(m, k)) in series
