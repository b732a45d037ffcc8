from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, model_validator

from services.graph_core.models import DualGraph, Vertex, VertexRole
from services.rationals import Rational


class VertexSchema(BaseModel):
    id: str
    weight: int
    genus: int = 0
    nodal: bool = False
    role: str
    colour: str
    fibre: Optional[int] = None
    section_degree: int = 0


class EdgeSchema(BaseModel):
    endpoints: Tuple[str, str]
    multiplicity: int = 1


class GraphSchema(BaseModel):
    vertices: List[VertexSchema]
    edges: List[EdgeSchema]
    blowup_count: int

    @classmethod
    def from_graph(cls, g: DualGraph) -> "GraphSchema":
        return cls(
            vertices=[
                VertexSchema(
                    id=v.id,
                    weight=v.weight,
                    genus=v.genus,
                    nodal=v.nodal,
                    role=v.role.value,
                    colour=v.colour.value,
                    fibre=v.fibre,
                    section_degree=v.section_degree,
                )
                for v in g.vertices
            ],
            edges=[EdgeSchema(endpoints=e.endpoints, multiplicity=e.multiplicity) for e in g.edges],
            blowup_count=g.blowup_count,
        )

    def to_graph(self) -> DualGraph:
        vertices = [
            Vertex(
                id=v.id,
                weight=v.weight,
                genus=v.genus,
                nodal=v.nodal,
                role=VertexRole(v.role),
                fibre=v.fibre,
                section_degree=v.section_degree,
            )
            for v in self.vertices
        ]
        multiplicities = {frozenset(e.endpoints): e.multiplicity for e in self.edges}
        return DualGraph.build(vertices, multiplicities, self.blowup_count)


class CertificateSchema(BaseModel):
    n: int
    plus_coefficients: Dict[str, Rational]
    ok: bool
    # "search", "trivial" or "table"
    source: str
    failures: List[str] = []
    equivalence: str = "numerical"


class BoundaryOptionSchema(BaseModel):
    boundary: Dict[str, Rational]
    max_b: Rational
    delta: int
    complements: List[CertificateSchema] = []
    # indices n in {1,2,3,4,6} (up to max_n) with an n-complement; empty for every row of the table
    regular_complements: List[int] = []


class RelationSchema(BaseModel):
    divisor: str
    fraction: Rational


class RowSchema(BaseModel):
    id: int
    s_c_label: Optional[str] = None
    form_digest: str
    graph: GraphSchema
    labels: Dict[str, str] = {}
    boundary_options: List[BoundaryOptionSchema]
    relations: List[RelationSchema] = []
    h_squared: Optional[Rational] = None
    relations_consistent: Optional[bool] = None
    provenance: List[str] = []


class FlagSchema(BaseModel):
    row: int
    kind: str
    detail: str


class SearchStatsSchema(BaseModel):
    accepted: int
    visited: int
    duplicates: int


class ClassificationTable(BaseModel):
    rows: List[RowSchema]
    flags: List[FlagSchema] = []
    rejections: Dict[str, int] = {}
    search: Optional[SearchStatsSchema] = None
    generated_at: Optional[str] = None

    @model_validator(mode="after")
    def check_row_order(self):
        ids = [row.id for row in self.rows]
        if ids != sorted(set(ids)):
            raise ValueError(f"row ids must be unique and ascending, got {ids}")
        return self

    @property
    def surface_count(self) -> int:
        return len(self.rows)

    def row(self, row_id: int) -> Optional[RowSchema]:
        return next((row for row in self.rows if row.id == row_id), None)


class CheckSchema(BaseModel):
    name: str
    expected: str
    actual: str
    status: Literal["pass", "fail", "flagged", "info"]


class RowVerificationSchema(BaseModel):
    row: int
    checks: List[CheckSchema]

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)


class MatchReportSchema(BaseModel):
    matched: List[int] = []
    missing: List[int] = []
    surplus: List[int] = []
    # golden rows whose boundary options differ from the emitted ones
    option_mismatches: List[int] = []
    flags: List[FlagSchema] = []

    @property
    def bijective(self) -> bool:
        return not self.surplus and not self.option_mismatches and all(
            any(f.row == row and f.kind == "known_missing" for f in self.flags) for row in self.missing
        )
