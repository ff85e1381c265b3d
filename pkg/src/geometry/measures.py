"""
Measures of shapes: volume, height (minimal width), diameter, plus the
scale and translate operations.

Boxes are measured exactly; polytopes through scipy's Qhull bindings.
"""
import math
from fractions import Fraction
from itertools import combinations
from typing import Union

import numpy as np
from scipy.spatial import ConvexHull
from scipy.spatial.distance import pdist

from src.models.shapes import Box, BoxUnion, ConvexPolytope, PlacedShape, Shape
from src.utils.errors import InvalidParameterError
from src.utils.validators import to_scalar

Measurable = Union[Shape, PlacedShape]


def _base(shape: Measurable) -> Shape:
    return shape.shape if isinstance(shape, PlacedShape) else shape


def scale(shape: Shape, factor) -> Shape:
    """
    Return {k x : x in shape}.

    Raises:
        InvalidParameterError: If factor <= 0
    """
    if isinstance(shape, Box):
        factor = to_scalar(factor)
    if not factor > 0:
        raise InvalidParameterError(f"Scale factor must be positive, got {factor}")
    return shape.scaled(factor)


def translate(shape: Shape, vector) -> Shape:
    return shape.translated(vector)


def as_polytope(shape: Measurable) -> ConvexPolytope:
    """
    Float view of a convex shape.

    Raises:
        InvalidParameterError: If the shape is a (non-convex) box union
    """
    shape = shape.region if isinstance(shape, PlacedShape) else shape
    if isinstance(shape, BoxUnion):
        raise InvalidParameterError("A box union is not convex and has no polytope form")
    return shape.as_polytope()


def polytope_volume(polytope: ConvexPolytope) -> float:
    """Volume by fanning the hull facets from the centroid."""
    points = polytope.points
    if polytope.dimension == 1:
        return float(points.max() - points.min())
    hull = ConvexHull(points)
    apex = points.mean(axis=0)
    total = 0.0
    for simplex in hull.simplices:
        edges = points[simplex] - apex
        total += abs(np.linalg.det(edges))
    return total / math.factorial(polytope.dimension)


def volume(shape: Measurable):
    """Lebesgue measure: exact Fraction for boxes, float for polytopes."""
    shape = _base(shape)
    if isinstance(shape, ConvexPolytope):
        return polytope_volume(shape)
    return shape.volume


def _widths(points: np.ndarray, directions: np.ndarray) -> np.ndarray:
    projections = points @ directions.T
    return projections.max(axis=0) - projections.min(axis=0)


def _edge_directions(polytope: ConvexPolytope) -> np.ndarray:
    points = polytope.points
    edges = set()
    for simplex in ConvexHull(points).simplices:
        for a, b in combinations(sorted(simplex), 2):
            edges.add((a, b))
    return np.array([points[b] - points[a] for a, b in sorted(edges)])


def width_candidates(polytope: ConvexPolytope) -> np.ndarray:
    """
    Unit directions among which the minimal width is attained.

    In the plane these are the edge normals. In space they are the facet
    normals together with the normals of every pair of edge directions.
    """
    normals, _ = polytope.halfspaces
    if polytope.dimension < 3:
        return normals
    edges = _edge_directions(polytope)
    crosses = [np.cross(e, f) for e, f in combinations(edges, 2)]
    crosses = np.array([c for c in crosses if np.linalg.norm(c) > 1e-12])
    if len(crosses):
        crosses = crosses / np.linalg.norm(crosses, axis=1)[:, None]
        return np.vstack([normals, crosses])
    return normals


def height(shape: Measurable):
    """Minimal distance between two parallel hyperplanes sandwiching the shape."""
    shape = _base(shape)
    if isinstance(shape, Box):
        return min(shape.extents)
    if isinstance(shape, BoxUnion):
        shape = ConvexPolytope.from_points([c for part in shape.parts for c in part.as_polytope().points])
    if shape.dimension == 1:
        return float(shape.points.max() - shape.points.min())
    return float(_widths(shape.points, width_candidates(shape)).min())


def diameter(shape: Measurable) -> float:
    """Largest distance between two points of the shape."""
    shape = _base(shape)
    if isinstance(shape, Box):
        return math.sqrt(sum(float(e) ** 2 for e in shape.extents))
    if isinstance(shape, BoxUnion):
        points = np.vstack([part.as_polytope().points for part in shape.parts])
    else:
        points = shape.points
    return float(pdist(points).max())


def box_overlap(first: Box, second: Box) -> Fraction:
    """Volume of the intersection of two boxes (zero when they only touch)."""
    result = Fraction(1)
    for a_lo, a_hi, b_lo, b_hi in zip(first.lo, first.hi, second.lo, second.hi):
        overlap = min(a_hi, b_hi) - max(a_lo, b_lo)
        if overlap <= 0:
            return Fraction(0)
        result *= overlap
    return result
