"""
Envelopes (minimum-volume enclosing parallelepipeds) and the two quality
checks that come with them: the scaled-envelope containment test and the
inscribed-ball bound.
"""
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from src.geometry.measures import as_polytope
from src.geometry.predicates import chebyshev_center, feasible_point, polytope_of, tolerance
from src.models.shapes import Box, BoxUnion, ConvexPolytope, Parallelepiped, PlacedShape
from src.utils.constants import EPS
from src.utils.errors import DegenerateShapeError, InvalidParameterError, PreconditionError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

# Facet normals considered when enumerating direction triples in space
MAX_TRIPLE_NORMALS = 24
# Best triples handed to the local search
REFINED_TRIPLES = 3


def slab_parallelepiped(points: np.ndarray, normals: np.ndarray) -> Optional[Parallelepiped]:
    """
    The parallelepiped cut out by the tightest slabs of the given normals.

    Its volume is the product of slab widths divided by |det N|; its sides
    are the columns of N^-1 scaled by the half-widths. Returns None for a
    (near) singular normal matrix.
    """
    if abs(np.linalg.det(normals)) <= 1e-9:
        return None
    projections = points @ normals.T
    lower, upper = projections.min(axis=0), projections.max(axis=0)
    inverse = np.linalg.inv(normals)
    center = inverse @ ((lower + upper) / 2)
    sides = (inverse * ((upper - lower) / 2)).T
    try:
        return Parallelepiped(tuple(float(x) for x in center),
                              tuple(tuple(float(x) for x in side) for side in sides))
    except DegenerateShapeError:
        return None


def slab_volume(points: np.ndarray, normals: np.ndarray) -> float:
    det = abs(np.linalg.det(normals))
    if det <= 1e-9:
        return np.inf
    projections = points @ normals.T
    return float(np.prod(projections.max(axis=0) - projections.min(axis=0)) / det)


def _unique_directions(normals: np.ndarray) -> np.ndarray:
    """Normals up to sign."""
    kept: List[np.ndarray] = []
    for normal in normals:
        if not any(abs(abs(float(normal @ other)) - 1.0) <= 1e-9 for other in kept):
            kept.append(normal)
    return np.array(kept)


def _planar_candidates(polytope: ConvexPolytope) -> List[Parallelepiped]:
    """Every pair of edge directions; the optimum is among them."""
    normals = _unique_directions(polytope.halfspaces[0])
    scored = []
    for i, j in combinations(range(len(normals)), 2):
        pair = normals[[i, j]]
        scored.append((slab_volume(polytope.points, pair), i, j))
    scored.sort()
    candidates = []
    for _, i, j in scored:
        candidate = slab_parallelepiped(polytope.points, normals[[i, j]])
        if candidate is not None:
            candidates.append(candidate)
    return candidates


def _unit(angles: np.ndarray) -> np.ndarray:
    theta, phi = angles
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def _angles(normal: np.ndarray) -> np.ndarray:
    return np.array([np.arccos(np.clip(normal[2], -1.0, 1.0)), np.arctan2(normal[1], normal[0])])


def _refine_triple(points: np.ndarray, normals: np.ndarray) -> np.ndarray:
    """Nelder-Mead over the spherical angles of the three normals."""
    start = np.concatenate([_angles(n) for n in normals])

    def objective(params: np.ndarray) -> float:
        return slab_volume(points, np.array([_unit(params[2 * i:2 * i + 2]) for i in range(3)]))

    result = minimize(objective, start, method="Nelder-Mead",
                      options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
    return np.array([_unit(result.x[2 * i:2 * i + 2]) for i in range(3)])


def _spatial_candidates(polytope: ConvexPolytope) -> List[Parallelepiped]:
    points = polytope.points
    normals = _unique_directions(polytope.halfspaces[0])[:MAX_TRIPLE_NORMALS]
    scored = []
    for triple in combinations(range(len(normals)), 3):
        volume = slab_volume(points, normals[list(triple)])
        if np.isfinite(volume):
            scored.append((volume, triple))
    scored.sort()
    candidates = []
    for volume, triple in scored[:REFINED_TRIPLES]:
        refined = _refine_triple(points, normals[list(triple)])
        if slab_volume(points, refined) < volume:
            candidate = slab_parallelepiped(points, refined)
            if candidate is not None:
                candidates.append(candidate)
    for _, triple in scored:
        candidate = slab_parallelepiped(points, normals[list(triple)])
        if candidate is not None:
            candidates.append(candidate)
    candidates.sort(key=lambda p: p.volume)
    return candidates


def envelope(shape) -> Parallelepiped:
    """
    An enclosing parallelepiped of (approximately) minimal volume.

    Boxes are their own envelope and keep exact coordinates. Polygons are
    solved exactly by enumerating pairs of edge directions. Polytopes in
    space use facet-normal triples refined by local search. Every returned
    parallelepiped passes `check_envelope_quality`.

    Raises:
        InvalidParameterError: For non-convex shapes
        DegenerateShapeError: If no candidate passes the quality check
    """
    shape = shape.region if isinstance(shape, PlacedShape) else shape
    if isinstance(shape, BoxUnion):
        raise InvalidParameterError("Envelopes are defined for convex shapes only")
    if isinstance(shape, Box):
        center = shape.center
        sides = tuple(tuple(extent / 2 if i == axis else Fraction(0) for i in range(shape.dimension))
                      for axis, extent in enumerate(shape.extents))
        return Parallelepiped(center, sides)

    polytope = as_polytope(shape)
    if polytope.dimension == 1:
        lo, hi = polytope.bounds()
        return Parallelepiped(((lo[0] + hi[0]) / 2,), (((hi[0] - lo[0]) / 2,),))
    if polytope.dimension == 2:
        candidates = _planar_candidates(polytope)
    else:
        candidates = _spatial_candidates(polytope)

    for candidate in candidates:
        if check_envelope_quality(polytope, candidate):
            return candidate
        logger.debug(f"Envelope candidate of volume {candidate.volume:.6g} failed the quality check")
    raise DegenerateShapeError("No enclosing parallelepiped passed the envelope quality check")


def _shrunk_support(parallelepiped: Parallelepiped, directions: np.ndarray) -> np.ndarray:
    """Support values of (1/d)(T - p) in the given directions."""
    dimension = parallelepiped.dimension
    return np.abs(directions @ parallelepiped.side_matrix.T).sum(axis=1) / dimension


def check_envelope_quality(shape, parallelepiped: Parallelepiped) -> bool:
    """
    Whether a translation of the parallelepiped shrunk by 1/d about its
    center fits inside the shape.

    Raises:
        PreconditionError: If the shape is not contained in the parallelepiped
    """
    shape = shape.region if isinstance(shape, PlacedShape) else shape
    dimension = parallelepiped.dimension

    if isinstance(shape, Box) and parallelepiped.is_exact and _axis_aligned(parallelepiped):
        for corner in shape.corners():
            alphas = _exact_coordinates(parallelepiped, corner)
            if alphas is None or any(abs(a) > 1 for a in alphas):
                raise PreconditionError("The shape is not contained in the parallelepiped")
        for axis, extent in enumerate(shape.extents):
            reach = sum(abs(side[axis]) for side in parallelepiped.sides) * 2 / dimension
            if reach > extent:
                return False
        return True

    polytope = polytope_of(shape)
    if not parallelepiped.contains_points(polytope.points, eps=tolerance(polytope.points) * 10):
        raise PreconditionError("The shape is not contained in the parallelepiped")
    a, b = polytope.halfspaces
    support = _shrunk_support(parallelepiped, a)
    return feasible_point(a, b - support + tolerance(polytope.points)) is not None


def _axis_aligned(parallelepiped: Parallelepiped) -> bool:
    return all(sum(1 for x in side if x != 0) == 1 for side in parallelepiped.sides)


def _exact_coordinates(parallelepiped: Parallelepiped, point) -> Optional[Tuple[Fraction, ...]]:
    """Side coordinates of a point for an exact, axis-aligned parallelepiped."""
    coordinates = []
    for axis in range(parallelepiped.dimension):
        movers = [i for i, side in enumerate(parallelepiped.sides) if side[axis] != 0]
        if len(movers) != 1:
            return None
        side = parallelepiped.sides[movers[0]]
        coordinates.append((point[axis] - parallelepiped.center[axis]) / side[axis])
    return tuple(coordinates)


def inscribed_ball_bound(shape):
    """
    Diameter of the largest ball found inside the shape.

    Exact (the least extent) for boxes; a Chebyshev-center LP otherwise.
    """
    shape = shape.region if isinstance(shape, PlacedShape) else shape
    if isinstance(shape, Box):
        return min(shape.extents)
    polytope = as_polytope(shape)
    a, b = polytope.halfspaces
    _, radius = chebyshev_center(a, b)
    if radius <= EPS:
        raise DegenerateShapeError("Shape contains no ball of positive radius")
    return 2 * radius
