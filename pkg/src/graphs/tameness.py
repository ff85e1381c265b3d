"""
Thinness of representations and tameness certificates.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.geometry.predicates import intersection_point, polytope_of, tolerance
from src.models.graph import Representation
from src.models.results import CertificateStatus, TamenessCertificate, ThinnessResult
from src.models.shapes import Box, BoxUnion
from src.relations.comparability import comparability_scan
from src.utils.constants import THINNESS_RANDOM_SAMPLES
from src.utils.errors import InvalidParameterError
from src.utils.logger import setup_logger
from src.utils.validators import require_int_at_least, to_scalar

logger = setup_logger(__name__)

Piece = Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...], int]


def _pieces(representation: Representation) -> List[Piece]:
    pieces = []
    for vertex, placed in enumerate(representation.placements):
        region = placed.region
        parts = region.parts if isinstance(region, BoxUnion) else (region,)
        pieces.extend((part.lo, part.hi, vertex) for part in parts)
    return pieces


def _owners(pieces: Sequence[Piece]) -> int:
    return len({owner for _, _, owner in pieces})


def _deepest(pieces: List[Piece], axis: int, dimension: int, best: int) -> Tuple[int, Optional[list]]:
    """
    Largest owner count over points of the pieces' common arrangement.

    A maximum of closed intervals is attained at some left endpoint, so on
    each axis only the lower ends are tried.
    """
    if axis == dimension:
        return _owners(pieces), []
    best_point = None
    for x in sorted({lo[axis] for lo, _, _ in pieces}):
        covering = [p for p in pieces if p[0][axis] <= x <= p[1][axis]]
        if _owners(covering) <= best:
            continue
        depth, rest = _deepest(covering, axis + 1, dimension, best)
        if depth > best:
            best, best_point = depth, [x] + rest
    return best, best_point


def _box_thinness(representation: Representation) -> ThinnessResult:
    pieces = _pieces(representation)
    depth, point = _deepest(pieces, 0, representation.dimension, 0)
    return ThinnessResult(depth, CertificateStatus.EXACT, tuple(point), len(pieces))


def box_depth(extents: Sequence[Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]]) -> int:
    """
    Largest number of closed boxes, given as (lo, hi) pairs, sharing a
    point. Pairs with lo == hi on some axis are allowed.
    """
    if not extents:
        return 0
    pieces = [(lo, hi, index) for index, (lo, hi) in enumerate(extents)]
    return _deepest(pieces, 0, len(extents[0][0]), 0)[0]


def _sample_points(representation: Representation, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    regions = [polytope_of(region) for region in representation.regions()]
    points = [region.points for region in regions]
    for u in range(representation.n):
        for v in range(u + 1, representation.n):
            common = intersection_point(representation[u], representation[v])
            if common is not None:
                points.append(np.array([common], dtype=float))
    per_shape = max(1, THINNESS_RANDOM_SAMPLES // representation.n)
    for region in regions:
        weights = rng.dirichlet(np.full(len(region.points), 0.5), size=per_shape)
        points.append(weights @ region.points)
    return np.vstack(points)


def _sampled_thinness(representation: Representation, seed: int) -> ThinnessResult:
    points = _sample_points(representation, seed)
    counts = np.zeros(len(points), dtype=int)
    for region in representation.regions():
        a, b = polytope_of(region).halfspaces
        counts += np.all(points @ a.T <= b + tolerance(points, b), axis=1)
    best = int(counts.argmax())
    return ThinnessResult(int(counts[best]), CertificateStatus.SAMPLED_ONLY,
                          tuple(float(x) for x in points[best]), len(points))


def thinness(representation: Representation, seed: int = 0) -> ThinnessResult:
    """
    The least c for which the representation is c-thin.

    Exact for boxes and box unions. For polytopes the depth is taken over
    candidate points (vertices, pairwise common points, random samples) and
    reported as sampled only.
    """
    if representation.is_exact:
        return _box_thinness(representation)
    return _sampled_thinness(representation, seed)


def arrangement_depth(representation: Representation) -> int:
    """
    Brute-force depth over every cell of the coordinate arrangement.

    On each axis the cells are all endpoint coordinates and the midpoints
    between consecutive ones; membership is tabulated per axis and combined
    with a single einsum.

    Raises:
        InvalidParameterError: Unless every shape is a plain box
    """
    regions = representation.regions()
    if not all(isinstance(region, Box) for region in regions):
        raise InvalidParameterError("Arrangement depth is defined on box representations only")
    dimension = representation.dimension
    tables = []
    for axis in range(dimension):
        coordinates = sorted({box.lo[axis] for box in regions} | {box.hi[axis] for box in regions})
        cells = coordinates + [(a + b) / 2 for a, b in zip(coordinates, coordinates[1:])]
        tables.append(np.array([[box.lo[axis] <= x <= box.hi[axis] for box in regions] for x in cells],
                               dtype=np.int64))
    letters = "ijk"[:dimension]
    spec = ",".join(f"{letter}p" for letter in letters) + "->" + letters
    return int(np.einsum(spec, *tables).max())


def check_tame(representation: Representation, c: int, s, seed: int = 0) -> TamenessCertificate:
    """
    Certify (c, ⊑_s)-tameness: every shape convex, the representation
    c-thin, and every pair of shapes ⊑_s-comparable.

    Failures are reported in the certificate, never raised. Undecided
    comparability queries downgrade the status to sampled only.
    """
    require_int_at_least("c", c, 1)
    s = to_scalar(s)
    for vertex, placed in enumerate(representation.placements):
        if not placed.shape.is_convex:
            logger.info(f"Vertex {vertex} has a non-convex shape")
            return TamenessCertificate(c, s, CertificateStatus.EXACT, 0, None, False, False, False,
                                       witness={"kind": "non_convex", "vertex": vertex})

    measured = thinness(representation, seed)
    status = measured.status
    witness: Optional[Dict] = None
    thin = measured.c <= c
    if not thin:
        witness = {"kind": "thickness", "point": list(measured.witness), "depth": measured.c}

    shapes = [placed.shape for placed in representation.placements]
    scan = comparability_scan(shapes, s)
    first_vertex: Dict[int, int] = {}
    for vertex, index in enumerate(scan.shape_index):
        first_vertex.setdefault(index, vertex)

    def vertices_of(pair: Tuple[int, int]) -> Tuple[int, int]:
        return first_vertex[pair[0]], first_vertex[pair[1]]

    undecided = tuple(vertices_of(report.pair) for report in scan.undecided)
    if undecided or not scan.exact:
        status = CertificateStatus.SAMPLED_ONLY
    comparable = not scan.incomparable
    if not comparable and witness is None:
        report = scan.incomparable[0]
        witness = {"kind": "incomparable", "pair": list(vertices_of(report.pair)),
                   "required_s": [report.required_forward, report.required_backward]}

    certificate = TamenessCertificate(c, s, status, measured.c, scan.s_star, True, thin, comparable,
                                      undecided, witness)
    logger.info(f"Tameness (c={c}, s={s}): {'passed' if certificate.passed else 'failed'} "
                f"[{status.value}], measured c={measured.c}, s*={float(scan.s_star):.6g}")
    return certificate
