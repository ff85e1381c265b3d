"""
Separator size against instance size: log-log fits and the calibrated
bound check against the target exponent 1 - 1/(2d + 4).
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.coloring.reach import volume_ordering
from src.generators.registry import build_family, sized_params
from src.separators.separators import (
    METHOD_BFS, METHOD_EXACT, METHOD_ORDERING, SeparatorResult, bfs_layer_separator,
    exact_min_balanced_separator, ordering_separator, verify_separator,
)
from src.utils.errors import GeneratorError, InvalidParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

MIN_LADDER_SIZES = 4
METHODS = (METHOD_EXACT, METHOD_BFS, METHOD_ORDERING)


def target_exponent(dimension: int) -> float:
    return 1 - 1 / (2 * dimension + 4)


def fit_exponent(points: Sequence[Tuple[int, int]]) -> Tuple[float, float]:
    """
    Least-squares fit of log(size) = p log(n) + log(beta).

    Separator sizes are clamped to at least 1 so empty separators stay on
    the log scale.

    Returns:
        Tuple[float, float]: (p, beta)
    """
    if len(points) < 2:
        raise InvalidParameterError("An exponent fit needs at least two points")
    n = np.array([p[0] for p in points], dtype=float)
    size = np.maximum(np.array([p[1] for p in points], dtype=float), 1.0)
    slope, intercept = np.polyfit(np.log(n), np.log(size), 1)
    return float(slope), float(np.exp(intercept))


@dataclass(frozen=True)
class ScalingFit:
    family: str
    dimension: int
    method: str
    points: Tuple[Tuple[int, int], ...]
    exponent_fit: float
    beta_fit: float

    @property
    def exponent_target(self) -> float:
        return target_exponent(self.dimension)

    @property
    def conclusive(self) -> bool:
        sizes = sorted({n for n, _ in self.points})
        return len(sizes) >= MIN_LADDER_SIZES and sizes[-1] >= 10 * sizes[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "dimension": self.dimension,
            "method": self.method,
            "exponent_target": self.exponent_target,
            "exponent_fit": self.exponent_fit,
            "beta_fit": self.beta_fit,
            "conclusive": self.conclusive,
            "points": [list(point) for point in self.points],
        }


def calibrated_bound_check(fit: ScalingFit) -> List[Dict[str, Any]]:
    """
    Calibrate beta on the smallest instance so that size = beta n^p with p
    the target exponent, then require size <= beta n^p at every size.

    Returns:
        List[Dict]: Rows (n, size, bound, ok), smallest n first
    """
    points = sorted(fit.points)
    exponent = fit.exponent_target
    n0, size0 = points[0]
    beta = max(size0, 1) / n0 ** exponent
    rows = []
    for n, size in points:
        bound = beta * n ** exponent
        rows.append({"n": n, "size": size, "bound": bound, "ok": size <= bound})
    return rows


def find_separator(bundle, method: str, r: int = 4) -> SeparatorResult:
    """
    Run one separator method on a generated instance.

    Raises:
        InvalidParameterError: For an unknown method
    """
    if method == METHOD_EXACT:
        return exact_min_balanced_separator(bundle.graph)
    if method == METHOD_BFS:
        return bfs_layer_separator(bundle.graph)
    if method == METHOD_ORDERING:
        ordering = bundle.ordering
        if ordering is None:
            if bundle.representation is None:
                raise InvalidParameterError("The ordering method needs an ordering or a representation")
            ordering = volume_ordering(bundle.representation)
        return ordering_separator(bundle.graph, ordering, r)
    raise InvalidParameterError(f"Unknown separator method {method!r}, use one of {METHODS}")


def scaling_experiment(family: str, sizes: Sequence[int], method: str = METHOD_BFS, seed: int = 0,
                       params: Optional[Mapping[str, Any]] = None, r: int = 4) -> ScalingFit:
    """
    Generate the family at each size, separate, and fit the exponent.

    Raises:
        InvalidParameterError: With fewer than four sizes
        GeneratorError: If a separator fails its own verification
    """
    if len(sizes) < MIN_LADDER_SIZES:
        raise InvalidParameterError(f"A scaling ladder needs at least {MIN_LADDER_SIZES} sizes, got {len(sizes)}")
    params = dict(params or {})
    points = []
    dimension = None
    for size in sizes:
        bundle = build_family(family, sized_params(family, params, int(size)), seed)
        result = find_separator(bundle, method, r)
        if not result.balanced or not verify_separator(bundle.graph, result):
            raise GeneratorError(f"{method} separator on {family} n={bundle.n} failed verification")
        dimension = bundle.dimension or dimension
        points.append((bundle.n, result.size))
        logger.info(f"{family} n={bundle.n}: {method} separator of size {result.size}")
    exponent, beta = fit_exponent(points)
    fit = ScalingFit(family, dimension or int(params.get("d", 2)), method, tuple(points), exponent, beta)
    logger.info(f"{family}: fitted exponent {exponent:.4f} (target {fit.exponent_target:.4f}), beta {beta:.4g}")
    return fit
