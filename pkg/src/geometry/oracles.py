"""
Brute-force oracles used to cross-check the geometric primitives.

All oracles take an explicit seed and are deterministic given it.
"""
from typing import Tuple

import numpy as np

from src.geometry.envelope import slab_volume
from src.geometry.predicates import polytope_of
from src.models.shapes import Box, BoxUnion, PlacedShape, Shape
from src.utils.constants import MC_VOLUME_SAMPLES
from src.utils.errors import UnsupportedDimensionError
from src.utils.validators import require_int_at_least

BATCH = 100_000


def _region(shape) -> Shape:
    return shape.region if isinstance(shape, PlacedShape) else shape


def points_inside(shape: Shape, points: np.ndarray) -> np.ndarray:
    """Boolean mask of the points lying in the (closed) shape."""
    if isinstance(shape, BoxUnion):
        mask = np.zeros(len(points), dtype=bool)
        for part in shape.parts:
            mask |= points_inside(part, points)
        return mask
    if isinstance(shape, Box):
        lo, hi = shape.bounds()
        return np.all((points >= lo) & (points <= hi), axis=1)
    a, b = polytope_of(shape).halfspaces
    return np.all(points @ a.T <= b, axis=1)


def _hit_fraction(lo: np.ndarray, hi: np.ndarray, shapes, samples: int,
                  seed: int) -> Tuple[float, float]:
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    while remaining > 0:
        batch = min(BATCH, remaining)
        points = rng.uniform(lo, hi, size=(batch, len(lo)))
        mask = np.ones(batch, dtype=bool)
        for shape in shapes:
            mask &= points_inside(shape, points)
        hits += int(mask.sum())
        remaining -= batch
    fraction = hits / samples
    return fraction, np.sqrt(fraction * (1 - fraction) / samples)


def monte_carlo_volume(shape, samples: int = MC_VOLUME_SAMPLES,
                       seed: int = 0) -> Tuple[float, float]:
    """
    Rejection-sampling volume estimate inside the bounding box.

    Returns:
        Tuple[float, float]: (estimate, standard error)
    """
    require_int_at_least("samples", samples, 1)
    shape = _region(shape)
    lo, hi = shape.bounds()
    lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    box_volume = float(np.prod(hi - lo))
    fraction, error = _hit_fraction(lo, hi, [shape], samples, seed)
    return fraction * box_volume, error * box_volume


def monte_carlo_intersection_volume(first, second, samples: int = MC_VOLUME_SAMPLES,
                                    seed: int = 0) -> Tuple[float, float]:
    """Rejection-sampling estimate of vol(first ∩ second)."""
    require_int_at_least("samples", samples, 1)
    first, second = _region(first), _region(second)
    lo1, hi1 = first.bounds()
    lo2, hi2 = second.bounds()
    lo = np.maximum(np.asarray(lo1, dtype=float), np.asarray(lo2, dtype=float))
    hi = np.minimum(np.asarray(hi1, dtype=float), np.asarray(hi2, dtype=float))
    if np.any(hi <= lo):
        return 0.0, 0.0
    box_volume = float(np.prod(hi - lo))
    fraction, error = _hit_fraction(lo, hi, [first, second], samples, seed)
    return fraction * box_volume, error * box_volume


def _planar_points(shape) -> np.ndarray:
    shape = _region(shape)
    if shape.dimension != 2:
        raise UnsupportedDimensionError(f"Direction sweeps are planar only, got dimension {shape.dimension}")
    if isinstance(shape, BoxUnion):
        return np.vstack([polytope_of(part).points for part in shape.parts])
    return polytope_of(shape).points


def direction_sweep_height(shape, angles: int = 10**5) -> float:
    """Least width over evenly spaced directions in [0, pi)."""
    points = _planar_points(shape)
    theta = np.linspace(0.0, np.pi, angles, endpoint=False)
    directions = np.column_stack([np.cos(theta), np.sin(theta)])
    projections = points @ directions.T
    return float((projections.max(axis=0) - projections.min(axis=0)).min())


def direction_pair_envelope_area(shape, samples: int = 10**4, seed: int = 0) -> float:
    """Least enclosing-parallelogram area over random pairs of slab directions."""
    points = _planar_points(shape)
    rng = np.random.default_rng(seed)
    best = np.inf
    for theta in rng.uniform(0.0, np.pi, size=(samples, 2)):
        normals = np.column_stack([np.cos(theta), np.sin(theta)])
        best = min(best, slab_volume(points, normals))
    return float(best)
