"""
Intersection graphs of representations.
"""
import heapq
from typing import List, Tuple

from src.geometry.predicates import intersects
from src.models.graph import Graph, Representation
from src.models.shapes import Box, BoxUnion
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def _box_pieces(representation: Representation) -> List[Tuple[Box, int]]:
    pieces = []
    for vertex, placed in enumerate(representation.placements):
        region = placed.region
        parts = region.parts if isinstance(region, BoxUnion) else (region,)
        pieces.extend((part, vertex) for part in parts)
    return pieces


def _meet_off_axis(first: Box, second: Box) -> bool:
    return all(a_lo <= b_hi and b_lo <= a_hi
               for a_lo, a_hi, b_lo, b_hi in zip(first.lo[1:], first.hi[1:], second.lo[1:], second.hi[1:]))


def _sweep_edges(representation: Representation) -> set:
    """
    Sweep the pieces by their lower end on the first axis, keeping a heap of
    active pieces keyed by upper end. Touching pieces stay active.
    """
    pieces = sorted(_box_pieces(representation), key=lambda item: item[0].lo[0])
    active: List[Tuple] = []
    edges = set()
    for index, (box, owner) in enumerate(pieces):
        while active and active[0][0] < box.lo[0]:
            heapq.heappop(active)
        for _, other_index in active:
            other, other_owner = pieces[other_index]
            if other_owner != owner and _meet_off_axis(box, other):
                edges.add((min(owner, other_owner), max(owner, other_owner)))
        heapq.heappush(active, (box.hi[0], index))
    return edges


def build_intersection_graph(representation: Representation) -> Graph:
    """
    The graph with an edge uv exactly when the placed shapes of u and v
    share a point (closed sets, so touching counts).

    Boxes and box unions are handled by an exact sweep; any polytope in the
    representation switches to the pairwise test.
    """
    if all(placed.is_exact for placed in representation.placements):
        edges = _sweep_edges(representation)
    else:
        edges = _pairwise_edges(representation)
    logger.debug(f"Intersection graph: {representation.n} vertices, {len(edges)} edges")
    return Graph.from_edges(representation.n, sorted(edges), representation.labels)


def _pairwise_edges(representation: Representation) -> set:
    placements = representation.placements
    return {(u, v)
            for u in range(len(placements))
            for v in range(u + 1, len(placements))
            if intersects(placements[u], placements[v])}


def pairwise_intersection_graph(representation: Representation) -> Graph:
    """O(n^2) oracle: one intersection test per pair."""
    return Graph.from_edges(representation.n, sorted(_pairwise_edges(representation)),
                            representation.labels)
