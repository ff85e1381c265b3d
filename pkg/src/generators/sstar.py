"""
The trapezoid-and-square family: T_h is the trapezoid with vertices
(0,0), (l_h,0), (l_h, h l_h), (0, 2h l_h) and S_h the square of side l_h,
with l_1 = 1 and l_{h+1} = l_h / (2(h+1)). Consecutive members form the
chain T_{h+1} <=_1 S_h <=_1 T_h.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple

import numpy as np

from src.coloring.reach import volume_ordering
from src.generators.bundle import InstanceBundle, geometric_bundle
from src.geometry.predicates import chebyshev_center, halfspaces_of, intersects, tolerance
from src.models.graph import Representation
from src.models.shapes import Box, ConvexPolytope, PlacedShape, Shape
from src.relations.comparability import le_k
from src.utils.errors import GeneratorError, InvalidParameterError
from src.utils.logger import setup_logger
from src.utils.validators import require_int_at_least

logger = setup_logger(__name__)

# Smallest scale the float backend is trusted with
MIN_SCALE = 1e-6
PLACEMENT_ATTEMPTS_PER_SHAPE = 50
DYADIC_BITS = 20
# A common point within this many tolerances counts as shared
DEPTH_MARGIN = 2.0


@dataclass(frozen=True)
class SStarShapes:
    scales: Tuple[Fraction, ...]
    trapezoids: Tuple[ConvexPolytope, ...]
    squares: Tuple[Box, ...]

    def shapes(self) -> List[Shape]:
        """T_1, S_1, T_2, S_2, ..."""
        return [shape for pair in zip(self.trapezoids, self.squares) for shape in pair]


def sstar_family(h_max: int) -> SStarShapes:
    """
    The shapes T_1..T_{h_max} and S_1..S_{h_max}, chain-checked.

    Raises:
        InvalidParameterError: If the smallest scale drops below MIN_SCALE
        GeneratorError: If the chain check fails
    """
    require_int_at_least("h_max", h_max, 1)
    scales = [Fraction(1)]
    for h in range(1, h_max):
        scales.append(scales[-1] / (2 * (h + 1)))
    if scales[-1] < MIN_SCALE:
        raise InvalidParameterError(
            f"h_max={h_max} gives scale {float(scales[-1]):.3g}, below the float backend's {MIN_SCALE}")
    trapezoids, squares = [], []
    for h, ell in enumerate(scales, start=1):
        size = float(ell)
        trapezoids.append(ConvexPolytope.from_points(
            [(0.0, 0.0), (size, 0.0), (size, h * size), (0.0, 2 * h * size)]))
        squares.append(Box((0, 0), (ell, ell)))
    for h in range(h_max):
        if not le_k(squares[h], trapezoids[h], 1).held:
            raise GeneratorError(f"S_{h + 1} does not fit in T_{h + 1}")
        if h + 1 < h_max and not le_k(trapezoids[h + 1], squares[h], 1).held:
            raise GeneratorError(f"T_{h + 2} does not fit in S_{h + 1}")
    return SStarShapes(tuple(scales), tuple(trapezoids), tuple(squares))


def _dyadic(rng: np.random.Generator, side: float) -> Fraction:
    return Fraction(int(rng.integers(0, 2 ** DYADIC_BITS)), 2 ** DYADIC_BITS) * Fraction(side)


def _share_point(shapes: Sequence[PlacedShape]) -> bool:
    regions = [placed.region for placed in shapes]
    systems = [halfspaces_of(region) for region in regions]
    a = np.vstack([system[0] for system in systems])
    b = np.concatenate([system[1] for system in systems])
    _, radius = chebyshev_center(a, b)
    tol = tolerance(*(bound for region in regions for bound in region.bounds()))
    return radius >= -DEPTH_MARGIN * tol


def _deepens_past(candidate: PlacedShape, neighbours: Sequence[PlacedShape], c: int) -> bool:
    """Whether candidate and some c of its neighbours have a common point."""
    if len(neighbours) < c:
        return False
    return any(_share_point((candidate,) + group) for group in combinations(neighbours, c))


def sstar_instance(h_max: int, n: int, c: int = 2, seed: int = 0, side=None) -> InstanceBundle:
    """
    Random c-thin placement of n shapes drawn from the family.

    A placement is rejected when it and some c of the shapes it meets share
    a point, which keeps every point in at most c shapes. Shapes may still
    meet any number of earlier shapes. The ordering is the volume ordering.

    Raises:
        GeneratorError: If n shapes cannot be placed
    """
    require_int_at_least("n", n, 1)
    require_int_at_least("c", c, 1)
    family = sstar_family(h_max)
    shapes = family.shapes()
    rng = np.random.default_rng(seed)
    side = float(np.sqrt(n)) if side is None else float(side)
    placed: List[PlacedShape] = []
    labels: List[str] = []
    attempts = 0
    while len(placed) < n:
        attempts += 1
        if attempts > PLACEMENT_ATTEMPTS_PER_SHAPE * n:
            raise GeneratorError(f"Placed only {len(placed)} of {n} shapes with c={c}")
        index = int(rng.integers(0, len(shapes)))
        translation = (_dyadic(rng, side), _dyadic(rng, side))
        candidate = PlacedShape(shapes[index], translation)
        neighbours = [other for other in placed if intersects(candidate, other)]
        if not _deepens_past(candidate, neighbours, c):
            placed.append(candidate)
            labels.append(f"{'TS'[index % 2]}{index // 2 + 1}")
    representation = Representation(tuple(placed), tuple(labels))
    bundle = geometric_bundle("sstar", {"h_max": h_max, "n": n, "c": c}, seed, representation,
                              ordering=volume_ordering(representation))
    if bundle.measured_c > c:
        raise GeneratorError(f"Sampled thickness {bundle.measured_c} exceeds c={c}")
    return bundle
