"""
Strong products of graphs and Cartesian products of representations.
"""
from itertools import product
from typing import Tuple

import networkx as nx
import numpy as np

from src.models.graph import Graph, Representation
from src.models.shapes import Box, BoxUnion, ConvexPolytope, PlacedShape, Shape
from src.utils.errors import InvalidParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

PRODUCT_MODE = "product"
CONJUNCTION_MODE = "conjunction"


def product_vertex(u1: int, u2: int, n2: int) -> int:
    """Id of (u1, u2) in a product whose second factor has n2 vertices."""
    return u1 * n2 + u2


def strong_product(first: Graph, second: Graph) -> Graph:
    """
    G1 ⊠ G2: (u1, u2) ~ (v1, v2) iff each coordinate is equal or adjacent
    and the pairs differ. Vertex (u1, u2) gets id u1 * n2 + u2.
    """
    n2 = second.n
    closed1 = [set(first.neighbors(u)) | {u} for u in first.vertices()]
    closed2 = [set(second.neighbors(u)) | {u} for u in second.vertices()]
    edges = []
    for u1, u2 in product(first.vertices(), second.vertices()):
        source = product_vertex(u1, u2, n2)
        for v1 in closed1[u1]:
            for v2 in closed2[u2]:
                target = product_vertex(v1, v2, n2)
                if source < target:
                    edges.append((source, target))
    labels = [f"({first.label(u1)},{second.label(u2)})"
              for u1, u2 in product(first.vertices(), second.vertices())]
    return Graph.from_edges(first.n * n2, edges, labels)


def strong_product_oracle(first: Graph, second: Graph) -> Graph:
    """networkx's strong product relabeled with the same vertex ids."""
    composed = nx.strong_product(first.to_networkx(), second.to_networkx())
    edges = [(product_vertex(a[0], a[1], second.n), product_vertex(b[0], b[1], second.n))
             for a, b in composed.edges]
    return Graph.from_edges(first.n * second.n, edges)


def _box_product(first: Box, second: Box) -> Box:
    return Box(first.lo + second.lo, first.hi + second.hi)


def shape_product(first: Shape, second: Shape) -> Shape:
    """
    The Cartesian product first x second.

    Boxes stay exact. Box unions distribute over their parts. Anything with
    a polytope factor becomes a polytope on the product of the vertex sets.
    """
    if isinstance(first, BoxUnion) or isinstance(second, BoxUnion):
        left = first.parts if isinstance(first, BoxUnion) else (first,)
        right = second.parts if isinstance(second, BoxUnion) else (second,)
        if not all(isinstance(p, Box) for p in left + right):
            raise InvalidParameterError("Products of box unions need box factors")
        return BoxUnion(tuple(_box_product(a, b) for a in left for b in right))
    if isinstance(first, Box) and isinstance(second, Box):
        return _box_product(first, second)
    points = [np.concatenate([p, q]) for p in first.as_polytope().points for q in second.as_polytope().points]
    return ConvexPolytope.from_points(np.array(points))


def _placed_product(first: PlacedShape, second: PlacedShape) -> PlacedShape:
    return PlacedShape(shape_product(first.shape, second.shape), first.translation + second.translation)


def product_representation(first: Representation, second: Representation,
                           mode: str = PRODUCT_MODE) -> Representation:
    """
    Cartesian-product representation in dimension d1 + d2.

    In product mode vertex (v1, v2) maps to φ1(v1) x φ2(v2) and the result
    represents G1 ⊠ G2. In conjunction mode vertex v maps to φ1(v) x φ2(v)
    and the result represents the graph with the edges common to G1 and G2.

    Raises:
        InvalidParameterError: For an unknown mode, or conjunction of
            representations with different vertex counts
    """
    if mode == PRODUCT_MODE:
        placements = [_placed_product(a, b) for a, b in product(first.placements, second.placements)]
        labels = [f"({u1},{u2})" for u1, u2 in product(_labels(first), _labels(second))]
    elif mode == CONJUNCTION_MODE:
        if first.n != second.n:
            raise InvalidParameterError(
                f"Conjunction needs equal vertex sets, got {first.n} and {second.n} vertices")
        placements = [_placed_product(a, b) for a, b in zip(first.placements, second.placements)]
        labels = list(_labels(first))
    else:
        raise InvalidParameterError(f"Unknown product mode: {mode!r}")
    logger.debug(f"{mode} representation: {len(placements)} vertices in dimension "
                 f"{first.dimension + second.dimension}")
    return Representation(tuple(placements), tuple(labels))


def _labels(representation: Representation) -> Tuple[str, ...]:
    if representation.labels is not None:
        return representation.labels
    return tuple(str(v) for v in range(representation.n))
