from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Mapping, Optional, Tuple

from services.errors import NonStandardCoefficient, OutOfRange
from services.graph_core.models import DualGraph, VertexColour
from services.singularities.models import CyclicQuotientType

SIX_SEVENTHS = Fraction(6, 7)
ONE_SEVENTH = Fraction(1, 7)
STANDARD_COEFFICIENTS = (Fraction(0),) + tuple(Fraction(m - 1, m) for m in range(2, 7))


def is_standard(value: Fraction) -> bool:
    value = Fraction(value)
    return value in STANDARD_COEFFICIENTS or SIX_SEVENTHS <= value <= 1


def standard_coefficient(value) -> Fraction:
    value = Fraction(value)
    if not is_standard(value):
        raise NonStandardCoefficient(f"{value} is neither (m-1)/m for m <= 6 nor >= 6/7")
    return value


@dataclass(frozen=True)
class LogPair:
    """(S^min, B^min) on the resolution; the exceptional curves are the black vertices."""
    graph: DualGraph
    b: Fraction = SIX_SEVENTHS
    boundary: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.graph.c_id is None:
            raise OutOfRange("a log pair needs exactly one boundary curve C")
        b = standard_coefficient(self.b)
        if b < SIX_SEVENTHS:
            raise NonStandardCoefficient(f"coefficient {b} of C is below 6/7")
        object.__setattr__(self, "b", b)

        cleaned = {}
        for vertex_id, value in sorted(self.boundary.items()):
            value = standard_coefficient(value)
            if value >= SIX_SEVENTHS:
                raise NonStandardCoefficient(f"{vertex_id} has coefficient {value}; only C may reach 6/7")
            vertex = self.graph.vertex(vertex_id)
            if vertex_id == self.graph.c_id or vertex.colour == VertexColour.BLACK:
                raise OutOfRange(f"{vertex_id} cannot carry a boundary coefficient")
            if value:
                cleaned[vertex_id] = value
        object.__setattr__(self, "boundary", cleaned)

    @property
    def c(self) -> str:
        return self.graph.c_id

    @property
    def exceptional_ids(self) -> List[str]:
        return self.graph.black_ids()

    @property
    def components(self) -> List[str]:
        return list(self.boundary)

    def coefficient(self, vertex_id: str) -> Fraction:
        if vertex_id == self.c:
            return self.b
        return self.boundary.get(vertex_id, Fraction(0))


@dataclass(frozen=True)
class PointOnC:
    # chain read from the curve met by C; empty for a smooth point
    chain: Tuple[str, ...]
    component: Optional[str]
    type: CyclicQuotientType
    log_discrepancy: Fraction

    @property
    def is_singular(self) -> bool:
        return bool(self.chain)


@dataclass(frozen=True)
class ExReport:
    ex1: bool
    ex2: bool
    ex3: bool
    ex4: bool
    violations: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.ex1 and self.ex2 and self.ex3 and self.ex4 and not self.violations
