"""
Largest hyperplane section of the unit cube.

The constants are stored to 12 significant digits; `measure_cube_section`
is the maximization oracle that produced them and is rerun by the tests.
"""
from itertools import product
from typing import Dict

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import ConvexHull

try:
    from scipy.spatial import QhullError
except ImportError:  # scipy < 1.8
    from scipy.spatial.qhull import QhullError

from src.utils.constants import MAX_SECTION_DIMENSION
from src.utils.errors import InvalidParameterError, UnsupportedDimensionError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

CUBE_SECTION_TABLE: Dict[int, float] = {
    1: 1.0,
    2: 1.41421356237,
    3: 1.41421356237,
}

CUBE_SECTION_PROVENANCE = {
    "method": "random hyperplanes followed by Nelder-Mead refinement",
    "samples": 200_000,
    "seed": 0,
}


def cube_section_constant(dimension: int) -> float:
    """
    Maximum (d-1)-volume of a hyperplane section of the unit d-cube.

    Raises:
        UnsupportedDimensionError: For d > 3
    """
    if dimension < 1:
        raise InvalidParameterError(f"Dimension must be positive, got {dimension}")
    if dimension not in CUBE_SECTION_TABLE:
        raise UnsupportedDimensionError(
            f"Cube sections are tabulated up to dimension {MAX_SECTION_DIMENSION}, got {dimension}")
    return CUBE_SECTION_TABLE[dimension]


def _cube_edges(dimension: int):
    corners = [np.array(c, dtype=float) for c in product((0.0, 1.0), repeat=dimension)]
    for i, p in enumerate(corners):
        for q in corners[i + 1:]:
            if np.abs(p - q).sum() == 1.0:
                yield p, q


def _normal(angles: np.ndarray) -> np.ndarray:
    if len(angles) == 1:
        return np.array([np.cos(angles[0]), np.sin(angles[0])])
    theta, phi = angles
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def section_measure(normal: np.ndarray, offset: float) -> float:
    """(d-1)-volume of {x in [0,1]^d : normal . x = offset}, d in {2, 3}."""
    dimension = len(normal)
    points = []
    for p, q in _cube_edges(dimension):
        fp, fq = normal @ p - offset, normal @ q - offset
        if fp == fq:
            if fp == 0:
                points.extend([p, q])
            continue
        t = fp / (fp - fq)
        if 0.0 <= t <= 1.0:
            points.append(p + t * (q - p))
    if len(points) < dimension:
        return 0.0
    points = np.array(points)
    if dimension == 2:
        return float(np.max(np.linalg.norm(points[:, None, :] - points[None, :, :], axis=2)))
    basis = np.linalg.svd(normal[None, :])[2][1:]
    try:
        return float(ConvexHull(points @ basis.T).volume)
    except (QhullError, ValueError):
        return 0.0


def measure_cube_section(dimension: int, samples: int = 20_000, seed: int = 0) -> float:
    """
    Estimate the largest hyperplane section of the unit cube by random
    search over hyperplanes, then refine the best one locally.
    """
    if dimension == 1:
        return 1.0
    if dimension not in (2, 3):
        raise UnsupportedDimensionError(f"Section oracle supports d in {{1, 2, 3}}, got {dimension}")
    rng = np.random.default_rng(seed)
    angle_count = dimension - 1

    def objective(params: np.ndarray) -> float:
        return -section_measure(_normal(params[:angle_count]), params[-1])

    best_params, best_value = None, 0.0
    for _ in range(samples):
        angles = rng.uniform(0.0, np.pi, size=angle_count)
        if angle_count == 2:
            angles[1] = rng.uniform(0.0, 2 * np.pi)
        normal = _normal(angles)
        corners = np.array(list(product((0.0, 1.0), repeat=dimension))) @ normal
        offset = rng.uniform(corners.min(), corners.max())
        value = section_measure(normal, offset)
        if value > best_value:
            best_params, best_value = np.append(angles, offset), value

    refined = minimize(objective, best_params, method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 20_000})
    result = max(best_value, -refined.fun)
    logger.debug(f"Cube section in dimension {dimension}: {result:.12f}")
    return result
