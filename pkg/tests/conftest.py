import os
import sys
from fractions import Fraction

import pytest

# Ensure `src/` is importable
ROOT_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
SRC_DIR = os.path.join(ROOT_DIR, "src")
if SRC_DIR not in sys.path:
    sys.path.append(SRC_DIR)

from services.enumeration import classification
from services.enumeration import service as enumeration_service
from services.graph_core.models import DualGraph, Vertex, VertexRole
from services.pair_predicates.models import SIX_SEVENTHS, LogPair
from services.singularities import service as singularity_service


@pytest.fixture()
def seed():
    return enumeration_service.seed_f2()


@pytest.fixture()
def make_graph():
    """Build a graph from (id, weight) pairs and (a, b, multiplicity) edges; "C" is the elliptic boundary curve."""
    def _make_graph(vertices, edges=(), blowup_count: int = 0):
        built = []
        for vertex_id, weight in vertices:
            if vertex_id == "C":
                built.append(Vertex("C", weight, genus=1, role=VertexRole.BOUNDARY_CURVE))
            else:
                built.append(Vertex(vertex_id, weight))
        multiplicities = {frozenset((a, b)): m for a, b, m in edges}
        return DualGraph.build(built, multiplicities, blowup_count)

    return _make_graph


@pytest.fixture()
def chain_pair(make_graph):
    """C meeting the first curve of the Hirzebruch-Jung chain of [m, k]."""
    def _chain_pair(m: int, k: int, b: Fraction = SIX_SEVENTHS):
        weights = singularity_service.hj_expand(m, k).weights
        ids = [f"E{i}" for i in range(1, len(weights) + 1)]
        edges = [("C", ids[0], 1)] + [(a, b_, 1) for a, b_ in zip(ids, ids[1:])]
        g = make_graph([("C", 1)] + list(zip(ids, weights)), edges)
        return LogPair(g, b)

    return _chain_pair


@pytest.fixture(scope="session")
def search_result():
    return enumeration_service.search()


@pytest.fixture(scope="session")
def table():
    return classification.classify_all()
