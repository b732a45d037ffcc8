from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from services.errors import OutOfRange


class VertexRole(str, Enum):
    BOUNDARY_CURVE = "boundary_curve"
    BOUNDARY_COMPONENT = "boundary_component"
    EXCEPTIONAL = "exceptional"
    MINIMAL_SECTION = "minimal_section"
    FIBRE = "fibre"
    OTHER = "other"


class VertexColour(str, Enum):
    BLACK = "black"
    WHITE = "white"
    SQUARE = "square"


@dataclass(frozen=True)
class Vertex:
    id: str
    weight: int
    genus: int = 0
    nodal: bool = False
    role: VertexRole = VertexRole.OTHER
    # index of the fibre of the ruling containing the curve, None for horizontal curves
    fibre: Optional[int] = None
    # degree over the base of the ruling (1 for sections, 0 inside fibres)
    section_degree: int = 0

    def __post_init__(self):
        if self.genus < 0:
            raise OutOfRange(f"vertex {self.id} has negative genus")
        if self.genus >= 1 and self.nodal:
            raise OutOfRange(f"vertex {self.id} cannot be both of genus {self.genus} and nodal")

    @property
    def colour(self) -> VertexColour:
        if self.weight <= -2:
            return VertexColour.BLACK
        if self.weight == -1:
            return VertexColour.WHITE
        return VertexColour.SQUARE

    @property
    def arithmetic_genus(self) -> int:
        return 1 if self.nodal else self.genus


@dataclass(frozen=True)
class Edge:
    endpoints: Tuple[str, str]
    multiplicity: int = 1

    def __post_init__(self):
        a, b = self.endpoints
        if a == b:
            raise OutOfRange(f"self-loop on {a}; record nodes with Vertex.nodal")
        if self.multiplicity < 1:
            raise OutOfRange(f"edge {a}-{b} needs multiplicity >= 1")
        object.__setattr__(self, "endpoints", tuple(sorted((a, b))))


@dataclass(frozen=True)
class DualGraph:
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...] = ()
    blowup_count: int = 0

    @classmethod
    def build(
        cls,
        vertices: Iterable[Vertex],
        multiplicities: Mapping[FrozenSet[str], int],
        blowup_count: int = 0,
    ) -> "DualGraph":
        """Normalise vertex order and drop edges whose multiplicity reached 0."""
        ordered = tuple(sorted(vertices, key=lambda v: v.id))
        ids = {v.id for v in ordered}
        if len(ids) != len(ordered):
            raise OutOfRange("duplicate vertex ids")
        edges = []
        for pair, mult in multiplicities.items():
            if mult <= 0:
                continue
            a, b = sorted(pair)
            if a not in ids or b not in ids:
                raise OutOfRange(f"edge {a}-{b} references an unknown vertex")
            edges.append(Edge((a, b), mult))
        edges.sort(key=lambda e: e.endpoints)
        if blowup_count < 0:
            raise OutOfRange("blowup_count must be non-negative")
        return cls(ordered, tuple(edges), blowup_count)

    @cached_property
    def _by_id(self) -> Dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def _adjacency(self) -> Dict[str, Dict[str, int]]:
        adjacency = {v.id: {} for v in self.vertices}
        for edge in self.edges:
            a, b = edge.endpoints
            adjacency[a][b] = edge.multiplicity
            adjacency[b][a] = edge.multiplicity
        return adjacency

    @property
    def ids(self) -> List[str]:
        return [v.id for v in self.vertices]

    def has_vertex(self, vertex_id: str) -> bool:
        return vertex_id in self._by_id

    def vertex(self, vertex_id: str) -> Vertex:
        try:
            return self._by_id[vertex_id]
        except KeyError:
            raise OutOfRange(f"unknown vertex {vertex_id}")

    def weight(self, vertex_id: str) -> int:
        return self.vertex(vertex_id).weight

    def multiplicity(self, a: str, b: str) -> int:
        return self._adjacency[a].get(b, 0)

    def neighbours(self, vertex_id: str) -> Dict[str, int]:
        self.vertex(vertex_id)
        return dict(self._adjacency[vertex_id])

    def multiplicities(self) -> Dict[FrozenSet[str], int]:
        return {frozenset(e.endpoints): e.multiplicity for e in self.edges}

    @property
    def c_id(self) -> Optional[str]:
        found = [v.id for v in self.vertices if v.role == VertexRole.BOUNDARY_CURVE]
        return found[0] if len(found) == 1 else None

    def ids_of(self, colour: VertexColour) -> List[str]:
        return [v.id for v in self.vertices if v.colour == colour and v.role != VertexRole.BOUNDARY_CURVE]

    def black_ids(self) -> List[str]:
        return self.ids_of(VertexColour.BLACK)

    def white_ids(self) -> List[str]:
        return self.ids_of(VertexColour.WHITE)

    def fibre_ids(self, fibre: int) -> List[str]:
        return [v.id for v in self.vertices if v.fibre == fibre]

    def fibres(self) -> List[int]:
        return sorted({v.fibre for v in self.vertices if v.fibre is not None})

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for v in self.vertices:
            graph.add_node(
                v.id,
                weight=v.weight,
                genus=v.genus,
                nodal=v.nodal,
                role=v.role.value,
                colour=v.colour.value,
            )
        for e in self.edges:
            graph.add_edge(*e.endpoints, multiplicity=e.multiplicity)
        return graph


@dataclass(frozen=True)
class CurveViolation:
    kind: str
    vertices: Tuple[str, ...] = field(default_factory=tuple)
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"
