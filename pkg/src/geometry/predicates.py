"""
Pairwise predicates on placed shapes: intersection, intersection volume,
containment, and the translate-union bound for centrally symmetric shapes.

Boxes and box unions are decided exactly. Everything else goes through
scipy's HiGHS linear programs with closed-set semantics: a common point
found within the tolerance counts as intersecting.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import HalfspaceIntersection

try:
    from scipy.spatial import QhullError
except ImportError:  # scipy < 1.8
    from scipy.spatial.qhull import QhullError

from src.geometry.measures import box_overlap
from src.models.shapes import Box, BoxUnion, ConvexPolytope, PlacedShape, Shape
from src.utils.constants import EPS, TRANSLATE_UNION_TRIALS
from src.utils.errors import DegenerateShapeError, InvalidParameterError, PreconditionError
from src.utils.logger import setup_logger
from src.utils.validators import require_int_at_least, require_same_dimension

logger = setup_logger(__name__)

DYADIC_RESOLUTION = 2 ** 16


def tolerance(*arrays) -> float:
    """EPS scaled by the magnitude of the coordinates involved."""
    magnitude = max((float(np.abs(a).max()) for a in arrays if np.size(a)), default=1.0)
    return EPS * max(1.0, magnitude)


@lru_cache(maxsize=8192)
def polytope_of(shape: Shape) -> ConvexPolytope:
    """Cached float view of a convex shape."""
    if isinstance(shape, BoxUnion):
        raise InvalidParameterError("A box union is not convex and has no polytope form")
    return shape.as_polytope()


def halfspaces_of(shape: Shape) -> Tuple[np.ndarray, np.ndarray]:
    return polytope_of(shape).halfspaces


def feasible_point(a_ub: np.ndarray, b_ub: np.ndarray) -> Optional[np.ndarray]:
    """A point of {x : A x <= b}, or None if the system is infeasible."""
    result = linprog(np.zeros(a_ub.shape[1]), A_ub=a_ub, b_ub=b_ub,
                     bounds=[(None, None)] * a_ub.shape[1], method="highs")
    if result.status == 0:
        return result.x
    if result.status != 2:
        logger.debug(f"Feasibility LP ended with status {result.status}: {result.message}")
    return None


def chebyshev_center(a_ub: np.ndarray, b_ub: np.ndarray) -> Tuple[Optional[np.ndarray], float]:
    """
    Center and radius of the largest ball inside {x : A x <= b}.

    Rows of A are assumed to be unit normals. The radius is negative when
    the system is infeasible (it is then the least uniform slack needed).
    """
    dimension = a_ub.shape[1]
    a_ext = np.hstack([a_ub, np.ones((a_ub.shape[0], 1))])
    cost = np.zeros(dimension + 1)
    cost[-1] = -1.0
    result = linprog(cost, A_ub=a_ext, b_ub=b_ub, bounds=[(None, None)] * (dimension + 1),
                     method="highs")
    if result.status != 0:
        return None, -np.inf
    return result.x[:dimension], float(result.x[-1])


def _regions(placed: PlacedShape):
    region = placed.region
    return region.parts if isinstance(region, BoxUnion) else (region,)


def _boxes_meet(first: Box, second: Box) -> bool:
    return all(a_lo <= b_hi and b_lo <= a_hi
               for a_lo, a_hi, b_lo, b_hi in zip(first.lo, first.hi, second.lo, second.hi))


def separation(first: Shape, second: Shape) -> float:
    """
    Least uniform slack s with a point x satisfying both halfspace systems
    relaxed by s. Negative values mean a common interior point exists.
    """
    a1, b1 = halfspaces_of(first)
    a2, b2 = halfspaces_of(second)
    _, radius = chebyshev_center(np.vstack([a1, a2]), np.concatenate([b1, b2]))
    return -radius


def _convex_meet(first: Shape, second: Shape) -> bool:
    lo1, hi1 = first.bounds()
    lo2, hi2 = second.bounds()
    tol = tolerance(lo1, hi1, lo2, hi2)
    if np.any(lo1 > hi2 + tol) or np.any(lo2 > hi1 + tol):
        return False
    return separation(first, second) <= tol


def intersects(first: PlacedShape, second: PlacedShape) -> bool:
    """
    Whether the two closed placed shapes share a point.

    Raises:
        DimensionMismatchError: If the dimensions differ
    """
    require_same_dimension(first.dimension, second.dimension)
    for part in _regions(first):
        for other in _regions(second):
            if isinstance(part, Box) and isinstance(other, Box):
                if _boxes_meet(part, other):
                    return True
            elif _convex_meet(part, other):
                return True
    return False


def intersection_point(first: PlacedShape, second: PlacedShape) -> Optional[tuple]:
    """A common point (exact for boxes), or None."""
    require_same_dimension(first.dimension, second.dimension)
    for part in _regions(first):
        for other in _regions(second):
            if isinstance(part, Box) and isinstance(other, Box):
                if _boxes_meet(part, other):
                    return tuple(max(a, b) for a, b in zip(part.lo, other.lo))
                continue
            a1, b1 = halfspaces_of(part)
            a2, b2 = halfspaces_of(other)
            center, radius = chebyshev_center(np.vstack([a1, a2]), np.concatenate([b1, b2]))
            if center is not None and -radius <= tolerance(b1, b2):
                return tuple(float(x) for x in center)
    return None


def _convex_overlap(first: Shape, second: Shape) -> float:
    if first.dimension == 1:
        lo1, hi1 = first.bounds()
        lo2, hi2 = second.bounds()
        return max(0.0, float(min(hi1[0], hi2[0]) - max(lo1[0], lo2[0])))
    a1, b1 = halfspaces_of(first)
    a2, b2 = halfspaces_of(second)
    return halfspace_overlap(a1, b1, a2, b2)


def halfspace_overlap(a1: np.ndarray, b1: np.ndarray, a2: np.ndarray, b2: np.ndarray) -> float:
    """Volume of {A1 x <= b1} ∩ {A2 x <= b2} for bounded systems in dimension 2 or 3."""
    stacked = np.unique(np.round(np.hstack([np.vstack([a1, a2]),
                                            -np.concatenate([b1, b2])[:, None]]), 12), axis=0)
    center, radius = chebyshev_center(stacked[:, :-1], -stacked[:, -1])
    if center is None or radius <= tolerance(b1, b2):
        return 0.0
    try:
        vertices = HalfspaceIntersection(stacked, center).intersections
        return ConvexPolytope.from_points(vertices).volume
    except (DegenerateShapeError, QhullError, ValueError) as e:
        logger.debug(f"Treating degenerate intersection as empty: {str(e)}")
        return 0.0


def overlap_volume(first: Shape, second: Shape):
    """Volume of the intersection of two unplaced convex shapes or boxes."""
    if isinstance(first, Box) and isinstance(second, Box):
        return box_overlap(first, second)
    return _convex_overlap(polytope_of(first), polytope_of(second))


def intersection_volume(first: PlacedShape, second: PlacedShape):
    """
    Volume of the intersection of two placed shapes.

    Exact for boxes and box unions (inclusion-exclusion over the pieces),
    float for polytopes.
    """
    require_same_dimension(first.dimension, second.dimension)
    parts1, parts2 = _regions(first), _regions(second)
    if all(isinstance(p, Box) for p in parts1 + parts2):
        pieces = [p.intersection(q) for p in parts1 for q in parts2]
        pieces = [piece for piece in pieces if piece is not None]
        if not pieces:
            return Fraction(0)
        return BoxUnion(tuple(pieces)).volume
    if len(parts1) > 1 or len(parts2) > 1:
        raise InvalidParameterError("Intersection volume with a box union needs box operands")
    return overlap_volume(parts1[0], parts2[0])


def _vertex_points(placed: PlacedShape) -> np.ndarray:
    return np.vstack([polytope_of(part).points for part in _regions(placed)])


def contains(outer: PlacedShape, inner: PlacedShape) -> bool:
    """
    Closed containment of inner in outer.

    Raises:
        InvalidParameterError: If outer is not convex
    """
    require_same_dimension(outer.dimension, inner.dimension)
    region = outer.region
    if isinstance(region, BoxUnion):
        raise InvalidParameterError("Containment in a non-convex box union is not supported")
    parts = _regions(inner)
    if isinstance(region, Box) and all(isinstance(p, Box) for p in parts):
        return all(all(o_lo <= i_lo and i_hi <= o_hi
                       for o_lo, o_hi, i_lo, i_hi in zip(region.lo, region.hi, p.lo, p.hi))
                   for p in parts)
    a, b = halfspaces_of(region)
    points = _vertex_points(inner)
    return bool(np.all(points @ a.T <= b + tolerance(points, b)))


def contains_point(placed: PlacedShape, point: Sequence) -> bool:
    exact_point = all(isinstance(x, (int, Fraction)) for x in point)
    if placed.is_exact and exact_point:
        return placed.region.contains_point(point)
    values = np.array([float(x) for x in point])
    return placed.region.contains_point(point, eps=tolerance(values))


@dataclass(frozen=True)
class TranslateUnionResult:
    holds: bool
    trials: int
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.holds


def _is_centrally_symmetric(shape: Shape) -> bool:
    if isinstance(shape, Box):
        return shape.lo == tuple(-x for x in shape.hi)
    return shape.is_centrally_symmetric()


def _sample_box_point(box: Box, rng: np.random.Generator) -> Tuple[Fraction, ...]:
    """Dyadic point of the box, pushed to a face on a quarter of the axes."""
    point = []
    for lo, hi in zip(box.lo, box.hi):
        if rng.random() < 0.25:
            step = int(rng.integers(0, 2)) * DYADIC_RESOLUTION
        else:
            step = int(rng.integers(0, DYADIC_RESOLUTION + 1))
        point.append(lo + (hi - lo) * Fraction(step, DYADIC_RESOLUTION))
    return tuple(point)


def _sample_polytope_point(polytope: ConvexPolytope, rng: np.random.Generator) -> np.ndarray:
    weights = rng.dirichlet(np.full(len(polytope.vertices), 0.5))
    return weights @ polytope.points


def _in_minkowski_sum(point: np.ndarray, first: ConvexPolytope, second: ConvexPolytope) -> bool:
    """Whether point = a + 2 b for some a in first and b in second."""
    a1, b1 = first.halfspaces
    a2, b2 = second.halfspaces
    tol = tolerance(point, b1, b2)
    system = np.vstack([a1, -a2])
    bounds = np.concatenate([b1 + tol, 2 * b2 - a2 @ point + tol])
    return feasible_point(system, bounds) is not None


def check_translate_union_bound(first: Shape, second: Shape,
                                trials: int = TRANSLATE_UNION_TRIALS,
                                seed: int = 0) -> TranslateUnionResult:
    """
    Sample translations of `second` meeting `first` and check that every
    sampled point of them lies in first + 2 * second.

    Args:
        first: The fixed shape A
        second: A convex shape B with B = -B
        trials: Number of sampled translations
        seed: Seed for the sampler

    Returns:
        TranslateUnionResult: holds is False with a witness point on violation

    Raises:
        PreconditionError: If B is not convex or not centrally symmetric
    """
    require_same_dimension(first.dimension, second.dimension)
    require_int_at_least("trials", trials, 1)
    if isinstance(second, BoxUnion) or isinstance(first, BoxUnion):
        raise PreconditionError("The translate-union bound needs convex shapes")
    if not _is_centrally_symmetric(second):
        raise PreconditionError("The translated shape must be centrally symmetric (B = -B)")

    rng = np.random.default_rng(seed)
    if isinstance(first, Box) and isinstance(second, Box):
        lo = tuple(a + 2 * b for a, b in zip(first.lo, second.lo))
        hi = tuple(a + 2 * b for a, b in zip(first.hi, second.hi))
        for _ in range(trials):
            anchor = _sample_box_point(first, rng)
            offset = _sample_box_point(second, rng)
            inner = _sample_box_point(second, rng)
            point = tuple(a + b + c for a, b, c in zip(anchor, offset, inner))
            if not all(l <= x <= h for l, x, h in zip(lo, point, hi)):
                return TranslateUnionResult(False, trials, point)
        return TranslateUnionResult(True, trials)

    first_poly, second_poly = polytope_of(first), polytope_of(second)
    for _ in range(trials):
        point = (_sample_polytope_point(first_poly, rng)
                 + _sample_polytope_point(second_poly, rng)
                 + _sample_polytope_point(second_poly, rng))
        if not _in_minkowski_sum(point, first_poly, second_poly):
            return TranslateUnionResult(False, trials, tuple(float(x) for x in point))
    return TranslateUnionResult(True, trials)
