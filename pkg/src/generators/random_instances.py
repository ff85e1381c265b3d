"""
Seeded random instances: box representations for the coloring and
separator experiments, plain box families for the dichotomy suite, and
interval family pairs for the counting bound.
"""
from collections import defaultdict
from fractions import Fraction
from itertools import product
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from src.generators.bundle import InstanceBundle, geometric_bundle
from src.graphs.tameness import box_depth
from src.models.graph import Representation
from src.models.results import IntervalFamily
from src.models.shapes import Box, PlacedShape
from src.utils.errors import GeneratorError, InvalidParameterError
from src.utils.logger import setup_logger
from src.utils.validators import require_int_at_least, require_positive, to_scalar

logger = setup_logger(__name__)

PROFILE_BOUNDED = "bounded"
PROFILE_HEAVY_TAIL = "heavy_tail"
ASPECT_PROFILES = (PROFILE_BOUNDED, PROFILE_HEAVY_TAIL)

# Extents and coordinates are multiples of these
EXTENT_DENOMINATOR = 2 ** 8
COORDINATE_DENOMINATOR = 2 ** 10

HEAVY_TAIL_DECADES = 3
PLACEMENT_ATTEMPTS_PER_BOX = 200
HALTON_BATCH = 1024
COMPARABILITY_BLOCK = 256


def _dyadic(value: float, denominator: int) -> Fraction:
    return Fraction(int(round(value * denominator)), denominator)


def _draw_extents(rng: np.random.Generator, n: int, dimension: int, profile: str) -> List[Tuple[Fraction, ...]]:
    if profile == PROFILE_BOUNDED:
        raw = 1 + rng.integers(0, EXTENT_DENOMINATOR + 1, size=(n, dimension)) / EXTENT_DENOMINATOR
    else:
        # Sorting each axis makes the boxes nested by extent, so every pair is comparable
        raw = np.sort(10.0 ** rng.uniform(0, HEAVY_TAIL_DECADES, size=(n, dimension)), axis=0)
        raw = raw[rng.permutation(n)]
    return [tuple(max(_dyadic(x, EXTENT_DENOMINATOR), Fraction(1, EXTENT_DENOMINATOR)) for x in row)
            for row in raw]


class _SpatialHash:
    """Boxes bucketed by the grid cells their float bounds touch."""

    def __init__(self, cell: float):
        self.cell = cell
        self.buckets: Dict[Tuple[int, ...], List[int]] = defaultdict(list)

    def _cells(self, box: Box):
        lo, hi = box.bounds()
        ranges = [range(int(np.floor(a / self.cell)), int(np.floor(b / self.cell)) + 1)
                  for a, b in zip(lo, hi)]
        return product(*ranges)

    def add(self, index: int, box: Box) -> None:
        for cell in self._cells(box):
            self.buckets[cell].append(index)

    def near(self, box: Box) -> set:
        found = set()
        for cell in self._cells(box):
            found.update(self.buckets.get(cell, ()))
        return found


def _meets(first: Box, second: Box) -> bool:
    return all(a <= d and c <= b for a, b, c, d in zip(first.lo, first.hi, second.lo, second.hi))


def _local_depth(box: Box, others: Sequence[Box]) -> int:
    """Depth of the arrangement restricted to box; the box itself counts."""
    clipped = [(box.lo, box.hi)]
    for other in others:
        clipped.append((tuple(max(a, c) for a, c in zip(box.lo, other.lo)),
                        tuple(min(b, d) for b, d in zip(box.hi, other.hi))))
    return box_depth(clipped)


def _measured_s_star(extents: Sequence[Tuple[Fraction, ...]]) -> float:
    """max over pairs of the smaller of the two required overlap factors."""
    values = np.array([[float(x) for x in row] for row in extents])
    volumes = values.prod(axis=1)
    s_star = 1.0
    for start in range(0, len(values), COMPARABILITY_BLOCK):
        block = values[start:start + COMPARABILITY_BLOCK]
        common = np.minimum(block[:, None, :], values[None, :, :]).prod(axis=2)
        forward = volumes[start:start + COMPARABILITY_BLOCK, None] / common
        backward = volumes[None, :] / common
        s_star = max(s_star, float(np.minimum(forward, backward).max()))
    return s_star


def random_box_instance(n: int, dimension: int = 2, aspect_profile: str = PROFILE_BOUNDED, seed: int = 0,
                        density=1.0, thin_cap: Optional[int] = None,
                        measure_comparability: bool = True) -> InstanceBundle:
    """
    n random boxes placed by a scrambled Halton sequence.

    The boxes' lower corners fill a cube whose volume is the total box
    volume divided by density. With thin_cap set, a placement that would
    put more than thin_cap boxes over a point is skipped and the sequence
    moves on.

    Args:
        n: Number of boxes
        dimension: Ambient dimension
        aspect_profile: "bounded" for extents in [1, 2], "heavy_tail" for
            extents log-uniform over three decades
        seed: Seed for extents and the Halton scrambling
        density: Expected coverage of the placement cube
        thin_cap: Largest depth allowed, or None for no cap
        measure_comparability: Whether to measure s* over all pairs

    Returns:
        InstanceBundle: With the measured thinness and s* recorded

    Raises:
        GeneratorError: If the boxes cannot be placed under thin_cap
    """
    require_int_at_least("n", n, 1)
    require_int_at_least("dimension", dimension, 1)
    if aspect_profile not in ASPECT_PROFILES:
        raise InvalidParameterError(f"Unknown aspect profile {aspect_profile!r}, use one of {ASPECT_PROFILES}")
    density = to_scalar(density)
    require_positive("density", density)
    if thin_cap is not None:
        require_int_at_least("thin_cap", thin_cap, 1)

    rng = np.random.default_rng(seed)
    extents = _draw_extents(rng, n, dimension, aspect_profile)
    total = sum(float(np.prod([float(x) for x in row])) for row in extents)
    side = (total / float(density)) ** (1.0 / dimension)
    cell = float(np.median([max(float(x) for x in row) for row in extents]))

    sampler = qmc.Halton(d=dimension, scramble=True, seed=seed)
    spatial = _SpatialHash(cell)
    boxes: List[Box] = []
    budget = PLACEMENT_ATTEMPTS_PER_BOX * n
    attempts = 0
    points = np.empty((0, dimension))
    while len(boxes) < n:
        if attempts >= budget:
            raise GeneratorError(f"Placed only {len(boxes)} of {n} boxes under thin_cap={thin_cap}")
        if attempts % HALTON_BATCH == 0:
            points = sampler.random(HALTON_BATCH)
        corner = [_dyadic(x * side, COORDINATE_DENOMINATOR) for x in points[attempts % HALTON_BATCH]]
        attempts += 1
        box = Box.from_extents(extents[len(boxes)], corner)
        if thin_cap is not None:
            others = [boxes[i] for i in spatial.near(box) if _meets(box, boxes[i])]
            if len(others) >= thin_cap and _local_depth(box, others) > thin_cap:
                continue
        spatial.add(len(boxes), box)
        boxes.append(box)

    measured_c = max(_local_depth(box, [boxes[j] for j in spatial.near(box) if j != i and _meets(box, boxes[j])])
                     for i, box in enumerate(boxes))
    s_star = _measured_s_star(extents) if measure_comparability else None
    logger.debug(f"random-box n={n} d={dimension} {aspect_profile}: {attempts} attempts, "
                 f"c={measured_c}, s*={s_star}")
    representation = Representation(tuple(PlacedShape.at_origin(box) for box in boxes))
    params = {"n": n, "d": dimension, "aspect_profile": aspect_profile, "density": str(density),
              "thin_cap": thin_cap}
    return geometric_bundle("random-box", params, seed, representation, measured_c=measured_c, s_star=s_star)


def random_box_family(n: int, dimension: int, seed: int = 0, span: int = 16, max_extent: int = 6) -> List[Box]:
    """n boxes with integer corners in [0, span) and integer extents in [1, max_extent]."""
    require_int_at_least("n", n, 1)
    require_int_at_least("dimension", dimension, 1)
    rng = np.random.default_rng(seed)
    corners = rng.integers(0, span, size=(n, dimension))
    sizes = rng.integers(1, max_extent + 1, size=(n, dimension))
    return [Box.from_extents([int(x) for x in size], [int(x) for x in corner])
            for corner, size in zip(corners, sizes)]


def _disjoint_family(rng: np.random.Generator, count: int, low: Fraction, high: Fraction,
                     start: Fraction) -> List[Tuple[Fraction, Fraction]]:
    """count intervals with lengths in [low, high], left to right with positive gaps."""
    intervals = []
    position = start
    for _ in range(count):
        length = low + (high - low) * Fraction(int(rng.integers(0, EXTENT_DENOMINATOR + 1)), EXTENT_DENOMINATOR)
        gap = Fraction(int(rng.integers(1, 4 * EXTENT_DENOMINATOR)), EXTENT_DENOMINATOR)
        position += gap
        intervals.append((position, position + length))
        position += length
    return intervals


def interval_family_pair(seed: int, s_prime: int, size_u: Optional[int] = None,
                         size_v: Optional[int] = None) -> Tuple[IntervalFamily, IntervalFamily, int]:
    """
    Families U and V and a scale l meeting the counting bound's premises.

    U holds at least s' + 6 disjoint intervals of length in [1, 2], V
    disjoint intervals of length in [1, s'] placed at a random offset. l is
    the least integer making every l * J meet every I.
    """
    require_int_at_least("s_prime", s_prime, 1)
    rng = np.random.default_rng(seed)
    size_u = int(rng.integers(s_prime + 6, s_prime + 13)) if size_u is None else size_u
    size_v = int(rng.integers(1, 31)) if size_v is None else size_v
    require_int_at_least("size_u", size_u, 1)
    require_int_at_least("size_v", size_v, 1)
    first = IntervalFamily.from_endpoints(_disjoint_family(rng, size_u, Fraction(1), Fraction(2), Fraction(0)))
    offset = Fraction(int(rng.integers(-40, 41)))
    second = IntervalFamily.from_endpoints(
        _disjoint_family(rng, size_v, Fraction(1), Fraction(s_prime), offset))

    needed = Fraction(1)
    for j in range(len(second)):
        center, half = second.centers[j], second.halves[j]
        for i in range(len(first)):
            a, b = first.interval(i)
            needed = max(needed, (a - center) / half, (center - b) / half)
    return first, second, int(ceil(needed))
