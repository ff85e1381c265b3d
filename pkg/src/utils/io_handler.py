"""
Input/Output handling for instances, graphs and reports.

Instance file format (JSON):
    {
      "provenance": {"generator": ..., "params": {...}, "seed": ...},
      "shapes": [{"kind": "box", "lo": [...], "hi": [...]},
                 {"kind": "polytope", "vertices": [[...], ...]},
                 {"kind": "box_union", "parts": [<box>, ...]}],
      "placements": [{"vertex": i, "shape": j, "translation": [...]}],
      "labels": [...],
      "graph": {"n": ..., "edges": [[u, v], ...]},
      "ordering": [...],
      "levels": [{"start": ..., "stop": ..., "length": ..., "old_size": ..., "hubs": ...}],
      "measured_c": ..., "s_star": ...
    }

Exact rationals are written as "p/q" strings and polytope coordinates as
JSON numbers, so files reload to equal values. A graph file holds only
{"n": ..., "edges": [...]}.
"""
import csv
import json
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from src.generators.bundle import InstanceBundle
from src.graphs.intersection import build_intersection_graph
from src.models.graph import Graph, Representation
from src.models.ordering import HubStarLevel, Ordering
from src.models.shapes import Box, BoxUnion, ConvexPolytope, PlacedShape, Shape
from src.utils.constants import CSV_SIGNIFICANT_DIGITS, KIND_BOX, KIND_BOX_UNION, KIND_POLYTOPE
from src.utils.errors import InstanceFormatError, ToolkitError
from src.utils.validators import to_scalar


def scalar_to_json(value) -> Any:
    """Fractions become "p/q" strings; everything else passes as a JSON number."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _json_default(value):
    if isinstance(value, (Fraction, np.integer, np.floating)):
        return scalar_to_json(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, frozenset, tuple)):
        return list(value)
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def shape_to_dict(shape: Shape) -> Dict[str, Any]:
    if isinstance(shape, Box):
        return {"kind": KIND_BOX, "lo": [str(x) for x in shape.lo], "hi": [str(x) for x in shape.hi]}
    if isinstance(shape, BoxUnion):
        return {"kind": KIND_BOX_UNION, "parts": [shape_to_dict(part) for part in shape.parts]}
    return {"kind": KIND_POLYTOPE, "vertices": [list(vertex) for vertex in shape.vertices]}


def shape_from_dict(data: Dict[str, Any]) -> Shape:
    """
    Parse one shape entry.

    Raises:
        InstanceFormatError: On an unknown kind or malformed fields
    """
    try:
        kind = data["kind"]
        if kind == KIND_BOX:
            return Box(tuple(to_scalar(x) for x in data["lo"]), tuple(to_scalar(x) for x in data["hi"]))
        if kind == KIND_BOX_UNION:
            return BoxUnion(tuple(shape_from_dict(part) for part in data["parts"]))
        if kind == KIND_POLYTOPE:
            return ConvexPolytope(tuple(tuple(float(x) for x in vertex) for vertex in data["vertices"]))
    except (KeyError, TypeError) as e:
        raise InstanceFormatError(f"Malformed shape entry {data!r}: {e}")
    except ToolkitError as e:
        raise InstanceFormatError(f"Invalid shape entry: {e}")
    raise InstanceFormatError(f"Unknown shape kind {kind!r}")


def representation_to_dict(representation: Representation) -> Dict[str, Any]:
    shapes: List[Shape] = []
    index: Dict[Shape, int] = {}
    placements = []
    for vertex, placed in enumerate(representation.placements):
        if placed.shape not in index:
            index[placed.shape] = len(shapes)
            shapes.append(placed.shape)
        placements.append({"vertex": vertex, "shape": index[placed.shape],
                           "translation": [scalar_to_json(x) for x in placed.translation]})
    data = {"shapes": [shape_to_dict(shape) for shape in shapes], "placements": placements}
    if representation.labels is not None:
        data["labels"] = list(representation.labels)
    return data


def representation_from_dict(data: Dict[str, Any]) -> Representation:
    """
    Raises:
        InstanceFormatError: If placements reference missing shapes or skip vertices
    """
    shapes = [shape_from_dict(entry) for entry in data.get("shapes", [])]
    placements = sorted(data.get("placements", []), key=lambda entry: entry.get("vertex", -1))
    if [entry.get("vertex") for entry in placements] != list(range(len(placements))):
        raise InstanceFormatError("Placements must cover vertices 0..n-1 exactly once")
    placed = []
    for entry in placements:
        try:
            shape = shapes[entry["shape"]]
            placed.append(PlacedShape(shape, tuple(entry.get("translation", [0] * shape.dimension))))
        except (KeyError, IndexError, TypeError):
            raise InstanceFormatError(f"Bad placement {entry!r}")
        except ToolkitError as e:
            raise InstanceFormatError(f"Bad placement {entry!r}: {e}")
    try:
        return Representation(tuple(placed), data.get("labels"))
    except ToolkitError as e:
        raise InstanceFormatError(str(e))


def graph_from_dict(data: Dict[str, Any]) -> Graph:
    try:
        return Graph.from_dict(data)
    except (KeyError, TypeError) as e:
        raise InstanceFormatError(f"Malformed graph entry: {e}")
    except ToolkitError as e:
        raise InstanceFormatError(str(e))


def bundle_to_dict(bundle: InstanceBundle) -> Dict[str, Any]:
    data: Dict[str, Any] = {"provenance": bundle.provenance()}
    if bundle.representation is not None:
        data.update(representation_to_dict(bundle.representation))
    data["graph"] = bundle.graph.to_dict()
    if bundle.ordering is not None:
        data["ordering"] = bundle.ordering.to_list()
    if bundle.levels:
        data["levels"] = [asdict(level) for level in bundle.levels]
    data["measured_c"] = bundle.measured_c
    data["s_star"] = scalar_to_json(bundle.s_star)
    return data


def bundle_from_dict(data: Dict[str, Any]) -> InstanceBundle:
    """
    Raises:
        InstanceFormatError: If the file is neither an instance nor a graph
    """
    if "placements" not in data and "graph" not in data and "edges" not in data:
        raise InstanceFormatError("File holds neither placements nor a graph")
    representation = representation_from_dict(data) if "placements" in data else None
    if "graph" in data:
        graph = graph_from_dict(data["graph"])
    elif "edges" in data:
        graph = graph_from_dict(data)
    else:
        graph = build_intersection_graph(representation)
    provenance = data.get("provenance", {})
    ordering = Ordering(tuple(data["ordering"])) if data.get("ordering") is not None else None
    try:
        levels = tuple(HubStarLevel(**level) for level in data.get("levels", []))
    except TypeError as e:
        raise InstanceFormatError(f"Malformed level entry: {e}")
    s_star = data.get("s_star")
    if isinstance(s_star, str):
        s_star = to_scalar(s_star)
    return InstanceBundle(provenance.get("generator", "file"), provenance.get("params", {}),
                          provenance.get("seed", 0), graph, representation, ordering=ordering,
                          levels=levels, measured_c=data.get("measured_c"), s_star=s_star)


def write_json(data: Any, file_path) -> None:
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, 'w') as f:
        json.dump(data, f, indent=2, default=_json_default)
        f.write('\n')


def read_json(file_path) -> Any:
    """
    Raises:
        FileNotFoundError: If the file does not exist
        InstanceFormatError: If it is not valid JSON
    """
    file_path = Path(file_path)
    if not file_path.exists():
        raise FileNotFoundError(f"Input file not found: {file_path}")
    try:
        with open(file_path, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InstanceFormatError(f"{file_path}: invalid JSON ({e})")


def save_instance(bundle: InstanceBundle, file_path) -> None:
    write_json(bundle_to_dict(bundle), file_path)


def load_instance(file_path) -> InstanceBundle:
    """Load an instance or plain graph file."""
    data = read_json(file_path)
    if not isinstance(data, dict):
        raise InstanceFormatError(f"{file_path}: expected a JSON object")
    return bundle_from_dict(data)


def load_ordering(file_path, n: int) -> Ordering:
    """
    A JSON list of vertex ids, earliest first.

    Raises:
        InstanceFormatError: If it is not a permutation of 0..n-1
    """
    data = read_json(file_path)
    if isinstance(data, dict):
        data = data.get("ordering")
    if not isinstance(data, list) or sorted(data) != list(range(n)):
        raise InstanceFormatError(f"{file_path}: ordering must be a permutation of 0..{n - 1}")
    return Ordering(tuple(data))


def format_csv_value(value) -> Any:
    """Rationals and floats are written with a fixed number of significant digits."""
    if isinstance(value, bool) or value is None:
        return "" if value is None else str(value).lower()
    if isinstance(value, (Fraction, float, np.floating)):
        if isinstance(value, Fraction) and value.denominator == 1:
            return str(value.numerator)
        return f"{float(value):.{CSV_SIGNIFICANT_DIGITS}g}"
    return value


def write_csv(rows: Iterable[Dict[str, Any]], file_path, columns: Sequence[str],
              header: Optional[Sequence[str]] = None) -> None:
    """
    Write rows as CSV. Optional header lines are written first as
    '#'-prefixed comments.
    """
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, 'w', newline='') as f:
        for line in header or ():
            f.write(f"# {line}\n")
        writer = csv.DictWriter(f, fieldnames=list(columns), extrasaction='ignore')
        writer.writeheader()
        for row in rows:
            writer.writerow({key: format_csv_value(row.get(key)) for key in columns})
