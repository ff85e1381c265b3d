"""
The shape comparability relations.

le_k:          some translation of B1 fits in k B2.
le_ks:         every point of k B2 lies in a translation of s B1 that holds a
               translation of B1 inside its intersection with k B2.
sqsubseteq_s:  every point of B2 lies in a translation of B1 whose overlap
               with B2 has volume at least vol(B1) / s.

Boxes are decided exactly with closed forms (the relations factor over the
axes). Polytopes are decided by linear programs over probe points, and
sqsubseteq_s by a translation search that may end Unknown.
"""
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.geometry.predicates import (
    feasible_point, halfspace_overlap, polytope_of, tolerance
)
from src.models.results import ComparabilityReport, ComparabilityScan, TriBool
from src.models.shapes import Box, BoxUnion, ConvexPolytope, Shape
from src.utils.constants import (
    PROBE_GRID_RESOLUTION, QUANTIFIER_ORACLE_GRID, QUANTIFIER_ORACLE_PROBES
)
from src.utils.errors import InvalidParameterError
from src.utils.logger import setup_logger
from src.utils.validators import require_at_least, require_same_dimension, to_scalar

logger = setup_logger(__name__)

# Relative slack granted to float volume comparisons
VOLUME_RTOL = 1e-9
PATTERN_SEARCH_ROUNDS = 60


def _check_pair(first: Shape, second: Shape) -> None:
    require_same_dimension(first.dimension, second.dimension)
    for shape in (first, second):
        if isinstance(shape, BoxUnion):
            raise InvalidParameterError("Comparability relations are defined for convex shapes only")


def _both_boxes(first: Shape, second: Shape) -> bool:
    return isinstance(first, Box) and isinstance(second, Box)


def _min_overlap_product(first: Box, second: Box) -> Fraction:
    result = Fraction(1)
    for a, b in zip(first.extents, second.extents):
        result *= min(a, b)
    return result


def probe_points(polytope: ConvexPolytope, resolution: int = PROBE_GRID_RESOLUTION) -> np.ndarray:
    """Vertices of the polytope followed by the grid points inside it."""
    lo, hi = polytope.bounds()
    axes = [np.linspace(l, h, resolution + 2)[1:-1] for l, h in zip(lo, hi)]
    grid = np.array(list(product(*axes)))
    a, b = polytope.halfspaces
    inside = grid[np.all(grid @ a.T <= b, axis=1)]
    return np.vstack([polytope.points, inside]) if len(inside) else polytope.points


def le_k(first: Shape, second: Shape, k) -> TriBool:
    """
    Whether a translation of `first` is a subset of k * `second`.

    Raises:
        DimensionMismatchError: If the dimensions differ
    """
    _check_pair(first, second)
    require_at_least("k", to_scalar(k), 1)
    if _both_boxes(first, second):
        k = to_scalar(k)
        for axis, (a, b) in enumerate(zip(first.extents, second.extents)):
            if a > k * b:
                return TriBool.failing((axis, a, k * b))
        return TriBool.holding()

    points = polytope_of(first).points
    a2, b2 = polytope_of(second).halfspaces
    k = float(k)
    slack = k * b2 - (points @ a2.T).max(axis=0)
    if feasible_point(a2, slack + tolerance(points, k * b2)) is not None:
        return TriBool.holding(exact=False)
    return TriBool.failing(exact=False)


def le_ks(first: Shape, second: Shape, k, s) -> TriBool:
    """
    Whether first <=_{k,s} second.

    For boxes the relation reduces to extent_i(first) <= k * extent_i(second)
    on every axis. For polytopes one LP per probe point of k * second looks
    for the two translations; the set of good probe points is convex, so
    the vertex probes already decide the relation.
    """
    _check_pair(first, second)
    require_at_least("k", to_scalar(k), 1)
    require_at_least("s", to_scalar(s), 1)
    if _both_boxes(first, second):
        k = to_scalar(k)
        for a, b in zip(first.extents, second.extents):
            if a > k * b:
                return TriBool.failing(tuple(k * x for x in second.lo))
        return TriBool.holding()

    k, s = float(k), float(s)
    inner = polytope_of(first)
    outer = polytope_of(second)
    vertices = inner.points
    a1, b1 = inner.halfspaces
    a2, b2 = outer.halfspaces
    dimension = inner.dimension
    zeros2 = np.zeros_like(a2)
    fixed = np.vstack([np.hstack([a2, zeros2]), np.hstack([a1, -a1])])
    fixed_rhs = np.concatenate([k * b2 - (vertices @ a2.T).max(axis=0),
                                s * b1 - (vertices @ a1.T).max(axis=0)])
    probe_rows = np.hstack([np.zeros((len(a1), dimension)), -a1])
    scaled_outer = ConvexPolytope.from_points(outer.points * k)
    for probe in probe_points(scaled_outer):
        system = np.vstack([fixed, probe_rows])
        rhs = np.concatenate([fixed_rhs, s * b1 - a1 @ probe])
        if feasible_point(system, rhs + tolerance(probe, rhs)) is None:
            return TriBool.failing(tuple(float(x) for x in probe), exact=False)
    return TriBool.holding(exact=False)


def _translated_overlap(first: ConvexPolytope, second: ConvexPolytope, shift: np.ndarray) -> float:
    """vol((first + shift) ∩ second)."""
    if first.dimension == 1:
        lo1, hi1 = first.bounds()
        lo2, hi2 = second.bounds()
        return max(0.0, float(min(hi1[0] + shift[0], hi2[0]) - max(lo1[0] + shift[0], lo2[0])))
    a1, b1 = first.halfspaces
    a2, b2 = second.halfspaces
    return halfspace_overlap(a1, b1 + a1 @ shift, a2, b2)


def best_overlap(first: ConvexPolytope, second: ConvexPolytope, probe: np.ndarray,
                 target: Optional[float] = None) -> float:
    """
    Largest vol((first + t) ∩ second) found over translations t with
    probe in first + t. Stops early once `target` is reached.

    The search runs over the anchor y = probe - t, a point of `first`:
    alignments, vertices and grid points, then a compass search.
    """
    a1, b1 = first.halfspaces
    tol = tolerance(first.points, probe)

    def inside(anchor: np.ndarray) -> bool:
        return bool(np.all(a1 @ anchor <= b1 + tol))

    anchors = []
    if inside(probe):
        anchors.append(probe)
    aligned = probe - (second.centroid - first.centroid)
    if inside(aligned):
        anchors.append(aligned)
    anchors.append(first.centroid)
    anchors.extend(probe_points(first, 3))

    best_value, best_anchor = -1.0, None
    for anchor in anchors:
        value = _translated_overlap(first, second, probe - anchor)
        if value > best_value:
            best_value, best_anchor = value, anchor
        if target is not None and best_value >= target:
            return best_value

    lo, hi = first.bounds()
    step = float(np.max(hi - lo)) / 4
    floor = step * 1e-4
    directions = np.vstack([np.eye(first.dimension), -np.eye(first.dimension)])
    for _ in range(PATTERN_SEARCH_ROUNDS):
        if step < floor:
            break
        improved = False
        for direction in directions:
            anchor = best_anchor + step * direction
            if not inside(anchor):
                continue
            value = _translated_overlap(first, second, probe - anchor)
            if value > best_value:
                best_value, best_anchor, improved = value, anchor, True
                if target is not None and best_value >= target:
                    return best_value
        if not improved:
            step /= 2
    return best_value


def sqsubseteq_s(first: Shape, second: Shape, s) -> TriBool:
    """
    Whether first ⊑_s second.

    Boxes: holds iff s * prod(min(a_i, b_i)) >= prod(a_i); any corner of
    the second box is a failure witness. Polytopes: every probe point of
    the second shape must reach overlap vol(first)/s by the translation
    search. A shortfall is only a proven failure when even
    min(vol(first), vol(second)) is below the threshold.
    """
    _check_pair(first, second)
    require_at_least("s", to_scalar(s), 1)
    if _both_boxes(first, second):
        s = to_scalar(s)
        if s * _min_overlap_product(first, second) >= first.volume:
            return TriBool.holding()
        return TriBool.failing(second.lo)

    inner, outer = polytope_of(first), polytope_of(second)
    threshold = inner.volume / float(s)
    probes = probe_points(outer)
    if min(inner.volume, outer.volume) < threshold * (1 - VOLUME_RTOL):
        return TriBool.failing(tuple(float(x) for x in probes[0]), exact=False)
    target = threshold * (1 - VOLUME_RTOL)
    for probe in probes:
        if best_overlap(inner, outer, probe, target) < target:
            return TriBool.unknown(tuple(float(x) for x in probe))
    return TriBool.holding(exact=False)


def required_s(first: Shape, second: Shape) -> Tuple[object, bool]:
    """
    Least s with first ⊑_s second.

    Returns:
        Tuple: (s, exact). Exact Fraction for boxes; for polytopes an upper
        estimate from the worst probe's best overlap found.
    """
    _check_pair(first, second)
    if _both_boxes(first, second):
        return first.volume / _min_overlap_product(first, second), True
    inner, outer = polytope_of(first), polytope_of(second)
    worst = min(best_overlap(inner, outer, probe) for probe in probe_points(outer))
    if worst <= 0:
        return float("inf"), False
    return max(1.0, inner.volume / worst), False


def _directional(first: Shape, second: Shape, s) -> Tuple[TriBool, object]:
    required, exact = required_s(first, second)
    if exact:
        verdict = TriBool.holding() if required <= to_scalar(s) else TriBool.failing(second.lo)
        return verdict, required
    if required <= float(s) * (1 + VOLUME_RTOL):
        return TriBool.holding(exact=False), required
    return sqsubseteq_s(first, second, s), required


def comparability_scan(shapes: Sequence[Shape], s) -> ComparabilityScan:
    """
    Pairwise ⊑_s reports over the distinct shapes, and the least s* making
    every pair comparable.

    Raises:
        InvalidParameterError: If the list is empty
    """
    if not shapes:
        raise InvalidParameterError("Comparability scan needs at least one shape")
    require_at_least("s", to_scalar(s), 1)
    distinct: Dict[Shape, int] = {}
    for shape in shapes:
        distinct.setdefault(shape, len(distinct))
    unique = list(distinct)
    exact = all(isinstance(shape, Box) for shape in unique)

    reports: List[ComparabilityReport] = []
    s_star = Fraction(1) if exact else 1.0
    for i in range(len(unique)):
        for j in range(i + 1, len(unique)):
            forward, required_forward = _directional(unique[i], unique[j], s)
            backward, required_backward = _directional(unique[j], unique[i], s)
            reports.append(ComparabilityReport((i, j), s, forward, backward,
                                               required_forward, required_backward))
            s_star = max(s_star, min(required_forward, required_backward))
            logger.debug(f"Shapes {i} and {j}: {reports[-1].direction}, "
                         f"required s {float(required_forward):.6g} / {float(required_backward):.6g}")
    return ComparabilityScan(tuple(reports), tuple(distinct[shape] for shape in shapes), s_star, exact)


def sqsubseteq_oracle(first: Box, second: Box, s, probes: int = QUANTIFIER_ORACLE_PROBES,
                      grid: int = QUANTIFIER_ORACLE_GRID, seed: int = 0) -> TriBool:
    """
    Monte-Carlo quantifier oracle for ⊑_s on boxes.

    Samples probe points of `second` (its corners included) and, for each,
    searches a grid of anchor points of `first` enlarged by the edge
    alignments with `second`. The overlap of two boxes is a product over
    axes, so the best grid placement is the product of per-axis maxima.
    """
    require_same_dimension(first.dimension, second.dimension)
    rng = np.random.default_rng(seed)
    lo1, hi1 = (np.array(v, dtype=float) for v in first.bounds())
    lo2, hi2 = (np.array(v, dtype=float) for v in second.bounds())
    corners = np.array(list(product(*zip(lo2, hi2))))
    points = np.vstack([corners, rng.uniform(lo2, hi2, size=(probes, len(lo2)))])
    threshold = float(first.volume) / float(s)

    fractions = np.linspace(0.0, 1.0, grid)
    best = np.ones(len(points))
    for axis in range(len(lo1)):
        column = points[:, axis:axis + 1]
        anchors = np.broadcast_to(lo1[axis] + fractions * (hi1[axis] - lo1[axis]), (len(points), grid))
        aligned = np.clip(np.hstack([column - lo2[axis] + lo1[axis], column - hi2[axis] + hi1[axis]]),
                          lo1[axis], hi1[axis])
        shifts = column - np.hstack([anchors, aligned])
        overlap = np.minimum(hi1[axis] + shifts, hi2[axis]) - np.maximum(lo1[axis] + shifts, lo2[axis])
        best *= np.maximum(overlap.max(axis=1), 0.0)
    short = np.flatnonzero(best < threshold * (1 - 1e-12))
    if len(short):
        return TriBool.failing(tuple(points[short[0]]), exact=False)
    return TriBool.holding(exact=False)
