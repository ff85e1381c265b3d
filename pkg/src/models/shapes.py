"""
Shape models: axis-aligned boxes (exact rationals), convex polytopes
(floats, d <= 3), non-convex box unions, placed shapes and parallelepipeds.

All shape values are immutable; every operation returns a new value.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterator, Sequence, Tuple, Union

import numpy as np
from scipy.spatial import ConvexHull

try:
    from scipy.spatial import QhullError
except ImportError:  # scipy < 1.8
    from scipy.spatial.qhull import QhullError

from src.utils.constants import (
    EPS, KIND_BOX, KIND_BOX_UNION, KIND_POLYTOPE, MAX_POLYTOPE_DIMENSION
)
from src.utils.errors import (
    DegenerateShapeError, InvalidParameterError, UnsupportedDimensionError
)
from src.utils.validators import require_vector, to_scalar

Scalar = Union[Fraction, float]


def _exact_determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination over the rationals."""
    matrix = [list(row) for row in rows]
    size = len(matrix)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if matrix[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
            det = -det
        det *= matrix[col][col]
        for r in range(col + 1, size):
            factor = matrix[r][col] / matrix[col][col]
            if factor:
                for c in range(col, size):
                    matrix[r][c] -= factor * matrix[col][c]
    return det


@dataclass(frozen=True)
class Box:
    """A product of closed intervals [lo_i, hi_i] with rational endpoints."""
    lo: Tuple[Fraction, ...]
    hi: Tuple[Fraction, ...]

    kind = KIND_BOX
    is_convex = True

    def __post_init__(self):
        lo = tuple(to_scalar(x) for x in self.lo)
        hi = tuple(to_scalar(x) for x in self.hi)
        if not lo:
            raise InvalidParameterError("A box needs dimension at least 1")
        require_vector("hi", hi, len(lo))
        for axis, (a, b) in enumerate(zip(lo, hi)):
            if not a < b:
                raise DegenerateShapeError(f"Box is degenerate on axis {axis}: [{a}, {b}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def from_extents(cls, extents: Sequence, lo: Sequence = None) -> "Box":
        """Box with the given side lengths, anchored at lo (default origin)."""
        extents = [to_scalar(e) for e in extents]
        lo = [Fraction(0)] * len(extents) if lo is None else [to_scalar(x) for x in lo]
        return cls(tuple(lo), tuple(a + e for a, e in zip(lo, extents)))

    @property
    def dimension(self) -> int:
        return len(self.lo)

    @property
    def extents(self) -> Tuple[Fraction, ...]:
        return tuple(b - a for a, b in zip(self.lo, self.hi))

    @property
    def volume(self) -> Fraction:
        result = Fraction(1)
        for extent in self.extents:
            result *= extent
        return result

    @property
    def center(self) -> Tuple[Fraction, ...]:
        return tuple((a + b) / 2 for a, b in zip(self.lo, self.hi))

    def translated(self, vector: Sequence) -> "Box":
        require_vector("translation", vector, self.dimension)
        shift = [to_scalar(x) for x in vector]
        return Box(tuple(a + t for a, t in zip(self.lo, shift)),
                   tuple(b + t for b, t in zip(self.hi, shift)))

    def scaled(self, factor) -> "Box":
        factor = to_scalar(factor)
        if factor <= 0:
            raise InvalidParameterError(f"Scale factor must be positive, got {factor}")
        return Box(tuple(a * factor for a in self.lo), tuple(b * factor for b in self.hi))

    def contains_point(self, point: Sequence, eps: float = 0.0) -> bool:
        if all(isinstance(x, (int, Fraction)) for x in point) and eps == 0.0:
            return all(a <= x <= b for a, x, b in zip(self.lo, point, self.hi))
        return all(float(a) - eps <= float(x) <= float(b) + eps
                   for a, x, b in zip(self.lo, point, self.hi))

    def intersection(self, other: "Box"):
        """The common box, or None when the closed boxes are disjoint or only touch."""
        lo = tuple(max(a, c) for a, c in zip(self.lo, other.lo))
        hi = tuple(min(b, e) for b, e in zip(self.hi, other.hi))
        if all(a < b for a, b in zip(lo, hi)):
            return Box(lo, hi)
        return None

    def corners(self) -> Iterator[Tuple[Fraction, ...]]:
        return product(*zip(self.lo, self.hi))

    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        return (np.array([float(x) for x in self.lo]), np.array([float(x) for x in self.hi]))

    def as_polytope(self) -> "ConvexPolytope":
        return ConvexPolytope(tuple(tuple(float(x) for x in c) for c in self.corners()))


@dataclass(frozen=True)
class ConvexPolytope:
    """
    Convex hull of finitely many points in R^d, d in {1, 2, 3}.

    The vertex tuple is canonicalized on construction: only hull vertices
    are kept, counterclockwise in the plane and lexicographically sorted in
    space.
    """
    vertices: Tuple[Tuple[float, ...], ...]

    kind = KIND_POLYTOPE
    is_convex = True

    def __post_init__(self):
        points = np.asarray(self.vertices, dtype=float)
        if points.ndim != 2 or points.shape[0] == 0:
            raise InvalidParameterError("A polytope needs a non-empty list of points")
        dimension = points.shape[1]
        if not 1 <= dimension <= MAX_POLYTOPE_DIMENSION:
            raise UnsupportedDimensionError(
                f"Polytopes are supported up to dimension {MAX_POLYTOPE_DIMENSION}, got {dimension}")
        object.__setattr__(self, "vertices", _canonical_vertices(points))

    @classmethod
    def from_points(cls, points) -> "ConvexPolytope":
        return cls(tuple(tuple(float(x) for x in p) for p in np.asarray(points, dtype=float)))

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    @cached_property
    def points(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    @cached_property
    def halfspaces(self) -> Tuple[np.ndarray, np.ndarray]:
        """(A, b) with the polytope equal to {x : A x <= b}; rows of A are unit normals."""
        if self.dimension == 1:
            lo, hi = self.points[:, 0].min(), self.points[:, 0].max()
            return np.array([[1.0], [-1.0]]), np.array([hi, -lo])
        equations = ConvexHull(self.points).equations
        # Triangulated facets repeat their plane
        unique = np.unique(np.round(equations, 12), axis=0)
        return unique[:, :-1], -unique[:, -1]

    @cached_property
    def centroid(self) -> np.ndarray:
        return self.points.mean(axis=0)

    @cached_property
    def volume(self) -> float:
        from src.geometry.measures import polytope_volume
        return polytope_volume(self)

    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.points.min(axis=0), self.points.max(axis=0)

    def translated(self, vector: Sequence) -> "ConvexPolytope":
        require_vector("translation", vector, self.dimension)
        return ConvexPolytope.from_points(self.points + np.array([float(x) for x in vector]))

    def scaled(self, factor) -> "ConvexPolytope":
        factor = float(factor)
        if factor <= 0:
            raise InvalidParameterError(f"Scale factor must be positive, got {factor}")
        return ConvexPolytope.from_points(self.points * factor)

    def contains_point(self, point: Sequence, eps: float = EPS) -> bool:
        a, b = self.halfspaces
        return bool(np.all(a @ np.asarray(point, dtype=float) <= b + eps))

    def is_centrally_symmetric(self, eps: float = EPS) -> bool:
        """Whether the polytope equals its reflection through the origin."""
        reflected = ConvexPolytope.from_points(-self.points)
        mine = np.array(sorted(map(tuple, np.round(self.points / eps**0.5, 0))))
        theirs = np.array(sorted(map(tuple, np.round(reflected.points / eps**0.5, 0))))
        return mine.shape == theirs.shape and bool(np.all(mine == theirs))

    def as_polytope(self) -> "ConvexPolytope":
        return self


def _canonical_vertices(points: np.ndarray) -> Tuple[Tuple[float, ...], ...]:
    dimension = points.shape[1]
    if dimension == 1:
        lo, hi = points[:, 0].min(), points[:, 0].max()
        if hi - lo <= EPS:
            raise DegenerateShapeError("Segment has zero length")
        return ((float(lo),), (float(hi),))
    if points.shape[0] <= dimension:
        raise DegenerateShapeError(
            f"{points.shape[0]} points cannot span dimension {dimension}")
    try:
        hull = ConvexHull(points)
    except QhullError as e:
        raise DegenerateShapeError(f"Points are not full-dimensional: {str(e).splitlines()[0]}")
    if hull.volume <= (EPS * max(1.0, float(np.ptp(points, axis=0).max()))) ** dimension:
        raise DegenerateShapeError("Polytope has (numerically) zero volume")
    chosen = points[hull.vertices]
    if dimension == 2:
        # Counterclockwise, starting from the lexicographically least vertex
        chosen = np.roll(chosen, -int(np.lexsort(chosen.T[::-1])[0]), axis=0)
    elif dimension == 3:
        chosen = chosen[np.lexsort(chosen.T[::-1])]
    return tuple(tuple(float(x) for x in p) for p in chosen)


@dataclass(frozen=True)
class BoxUnion:
    """A finite union of boxes. Not convex; kept only as a negative control."""
    parts: Tuple[Box, ...]

    kind = KIND_BOX_UNION
    is_convex = False

    def __post_init__(self):
        if not self.parts:
            raise InvalidParameterError("A box union needs at least one part")
        dims = {part.dimension for part in self.parts}
        if len(dims) != 1:
            raise InvalidParameterError(f"Box union parts have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def dimension(self) -> int:
        return self.parts[0].dimension

    @property
    def volume(self) -> Fraction:
        """Inclusion-exclusion over the parts."""
        total = Fraction(0)
        for size in range(1, len(self.parts) + 1):
            for group in combinations(self.parts, size):
                common = group[0]
                for part in group[1:]:
                    common = common.intersection(part)
                    if common is None:
                        break
                if common is not None:
                    total += common.volume if size % 2 else -common.volume
        return total

    def translated(self, vector: Sequence) -> "BoxUnion":
        return BoxUnion(tuple(part.translated(vector) for part in self.parts))

    def scaled(self, factor) -> "BoxUnion":
        return BoxUnion(tuple(part.scaled(factor) for part in self.parts))

    def contains_point(self, point: Sequence, eps: float = 0.0) -> bool:
        return any(part.contains_point(point, eps) for part in self.parts)

    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        los, his = zip(*(part.bounds() for part in self.parts))
        return np.min(los, axis=0), np.max(his, axis=0)


Shape = Union[Box, ConvexPolytope, BoxUnion]


def _is_exact(shape: Shape) -> bool:
    return isinstance(shape, (Box, BoxUnion))


@dataclass(frozen=True)
class PlacedShape:
    """A shape together with the translation vector that places it."""
    shape: Shape
    translation: Tuple[Scalar, ...]

    def __post_init__(self):
        require_vector("translation", self.translation, self.shape.dimension)
        if _is_exact(self.shape):
            vector = tuple(to_scalar(x) for x in self.translation)
        else:
            vector = tuple(float(x) for x in self.translation)
        object.__setattr__(self, "translation", vector)

    @classmethod
    def at_origin(cls, shape: Shape) -> "PlacedShape":
        zero = Fraction(0) if _is_exact(shape) else 0.0
        return cls(shape, (zero,) * shape.dimension)

    @property
    def dimension(self) -> int:
        return self.shape.dimension

    @property
    def is_exact(self) -> bool:
        return _is_exact(self.shape)

    @cached_property
    def region(self) -> Shape:
        """The translated shape as a point set."""
        if not any(self.translation):
            return self.shape
        return self.shape.translated(self.translation)


@dataclass(frozen=True)
class Parallelepiped:
    """The point set {center + sum_i alpha_i * sides[i] : -1 <= alpha_i <= 1}."""
    center: Tuple[Scalar, ...]
    sides: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        dimension = len(self.center)
        if len(self.sides) != dimension or any(len(side) != dimension for side in self.sides):
            raise InvalidParameterError(
                f"A parallelepiped in dimension {dimension} needs {dimension} side vectors of length {dimension}")
        object.__setattr__(self, "center", tuple(self.center))
        object.__setattr__(self, "sides", tuple(tuple(side) for side in self.sides))
        if self.is_exact:
            if _exact_determinant(self.sides) == 0:
                raise DegenerateShapeError("Parallelepiped sides are linearly dependent")
        elif abs(np.linalg.det(self.side_matrix)) <= EPS * EPS:
            raise DegenerateShapeError("Parallelepiped sides are linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.center)

    @property
    def is_exact(self) -> bool:
        values = list(self.center) + [x for side in self.sides for x in side]
        return all(isinstance(x, (int, Fraction)) for x in values)

    @cached_property
    def side_matrix(self) -> np.ndarray:
        """Side vectors as rows."""
        return np.array([[float(x) for x in side] for side in self.sides])

    @cached_property
    def center_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.center])

    @property
    def volume(self) -> Scalar:
        if self.is_exact:
            return 2 ** self.dimension * abs(_exact_determinant(self.sides))
        return float(2 ** self.dimension * abs(np.linalg.det(self.side_matrix)))

    @cached_property
    def inverse(self) -> np.ndarray:
        """Matrix M with alpha = M (x - center)."""
        return np.linalg.inv(self.side_matrix.T)

    def coordinates(self, points) -> np.ndarray:
        """Side coordinates alpha of each point (rows)."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return (points - self.center_array) @ self.inverse.T

    def vertices(self) -> np.ndarray:
        signs = np.array(list(product((-1.0, 1.0), repeat=self.dimension)))
        return self.center_array + signs @ self.side_matrix

    def halfspaces(self) -> Tuple[np.ndarray, np.ndarray]:
        """(A, b) with the parallelepiped equal to {x : A x <= b}."""
        m = self.inverse
        offsets = m @ self.center_array
        return np.vstack([m, -m]), np.concatenate([1.0 + offsets, 1.0 - offsets])

    @property
    def height(self) -> float:
        """Width of the thinnest of the d slabs bounding the parallelepiped."""
        return float(2.0 / np.linalg.norm(self.inverse, axis=1).max())

    def contains_points(self, points, eps: float = EPS) -> bool:
        return bool(np.all(np.abs(self.coordinates(points)) <= 1.0 + eps))

    def as_polytope(self) -> ConvexPolytope:
        return ConvexPolytope.from_points(self.vertices())
