"""
Output storage

classification.json and the DOT bundle, one file per row. Files are written
with sorted keys and no timestamps in deterministic mode so two runs give
identical bytes.
"""
import json
from pathlib import Path
from typing import Iterable, List, Tuple

import logging

import pydot

from services.graph_core.models import DualGraph, VertexColour
from services.enumeration.schemas import ClassificationTable

logger = logging.getLogger(__name__)

TABLE_FILE = "classification.json"
DOT_DIR = "dot"

_SHAPES = {
    VertexColour.BLACK: {"shape": "circle", "style": "filled", "fillcolor": "black", "fontcolor": "white"},
    VertexColour.WHITE: {"shape": "circle", "style": "solid"},
    VertexColour.SQUARE: {"shape": "box", "style": "solid"},
}


def table_json(table: ClassificationTable) -> str:
    payload = table.model_dump(mode="json")
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_table(table: ClassificationTable, output_dir: Path) -> Path:
    output_dir.mkdir(parents=True, exist_ok=True)
    path = output_dir / TABLE_FILE
    path.write_text(table_json(table))
    logger.info(f"wrote {path}")
    return path


def read_table(path: Path) -> ClassificationTable:
    return ClassificationTable.model_validate_json(path.read_text())


def graph_to_dot(g: DualGraph, name: str) -> pydot.Dot:
    dot = pydot.Dot(name, graph_type="graph", strict=False)
    for v in g.vertices:
        label = f"{v.id}\\n{v.weight}"
        if v.genus:
            label += f" g={v.genus}"
        if v.nodal:
            label += " nodal"
        dot.add_node(pydot.Node(v.id, label=label, **{"class": v.colour.value}, **_SHAPES[v.colour]))
    for e in g.edges:
        a, b = e.endpoints
        for _ in range(e.multiplicity):
            dot.add_edge(pydot.Edge(a, b))
    return dot


def dot_file_name(row_id: int) -> str:
    return f"row-{row_id:02d}.dot"


def write_dot_bundle(graphs: Iterable[Tuple[int, DualGraph]], output_dir: Path) -> List[Path]:
    directory = output_dir / DOT_DIR
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for row_id, g in graphs:
        path = directory / dot_file_name(row_id)
        path.write_text(graph_to_dot(g, f"row_{row_id}").to_string())
        paths.append(path)
    logger.info(f"wrote {len(paths)} DOT files to {directory}")
    return paths
