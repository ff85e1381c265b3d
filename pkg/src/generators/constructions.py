"""
Explicit constructions: crossing rectangles and wedges for K_{m,m}, the
star-times-path boxes, and the L-shaped clique used as a non-convex control.
"""
from fractions import Fraction
from typing import List

import numpy as np

from src.generators.bundle import InstanceBundle, geometric_bundle
from src.geometry.predicates import separation, tolerance
from src.graphs.products import product_representation, strong_product
from src.models.graph import Graph, Representation, complete_graph, path_graph, star_graph
from src.models.shapes import Box, BoxUnion, ConvexPolytope, PlacedShape
from src.relations.comparability import le_k
from src.relations.lemmas import incomparability_threshold
from src.utils.errors import GeneratorError, InvalidParameterError
from src.utils.logger import setup_logger
from src.utils.validators import require_int_at_least, to_scalar

logger = setup_logger(__name__)

# Half-width of the narrow boxes around segments
WEDGE_HALF_WIDTH = Fraction(1, 2000)
# Wedges must clear the intersection tolerance by this factor
WEDGE_SEPARATION_MARGIN = 2.0
WEDGE_MAX_DOUBLINGS = 60

PATH_STEP = Fraction(9, 10)
LEAF_STEP = Fraction(11, 10)


def complete_bipartite(m: int) -> Graph:
    """K_{m,m} with sides 0..m-1 and m..2m-1."""
    return Graph.from_edges(2 * m, [(i, m + j) for i in range(m) for j in range(m)])


def narrow_rectangles_bipartite(m: int, thickness=None) -> InstanceBundle:
    """
    m horizontal and m vertical rectangles of the given thickness crossing
    in a grid: a 2-thin representation of K_{m,m}.

    Raises:
        InvalidParameterError: If thickness is not in (0, 1/(10m)]
    """
    require_int_at_least("m", m, 1)
    limit = Fraction(1, 10 * m)
    thickness = limit if thickness is None else to_scalar(thickness)
    if not 0 < thickness <= limit:
        raise InvalidParameterError(f"Thickness must lie in (0, {limit}], got {thickness}")
    span = m + 1
    horizontal = [Box((0, i), (span, i + thickness)) for i in range(1, m + 1)]
    vertical = [Box((j, 0), (j + thickness, span)) for j in range(1, m + 1)]
    representation = Representation(
        tuple(PlacedShape.at_origin(shape) for shape in horizontal + vertical),
        tuple([f"H{i}" for i in range(1, m + 1)] + [f"V{j}" for j in range(1, m + 1)]))
    threshold = incomparability_threshold(2, m)
    incomparable = le_k(horizontal[0], vertical[0], threshold).failed and \
        le_k(vertical[0], horizontal[0], threshold).failed
    return geometric_bundle("narrow-rectangles", {"m": m, "thickness": str(thickness)}, 0, representation,
                            expected_graph=complete_bipartite(m), expected_thinness=2,
                            extra={"incomparable_up_to": threshold, "incomparable": incomparable})


def _wedge(previous: ConvexPolytope, index: int, m: int, lift: float) -> ConvexPolytope:
    segment = np.array([[1.0, index, 0.0], [float(m), index, 0.0]])
    raised = previous.points + np.array([0.0, lift, 1.0])
    return ConvexPolytope.from_points(np.vstack([segment, raised]))


def _separated(first: ConvexPolytope, second: ConvexPolytope) -> bool:
    """Apart by more than the tolerance the intersection graph builder applies."""
    lo1, hi1 = first.bounds()
    lo2, hi2 = second.bounds()
    return separation(first, second) > WEDGE_SEPARATION_MARGIN * tolerance(lo1, hi1, lo2, hi2)


def wedge_family(m: int) -> InstanceBundle:
    """
    Narrow boxes L_1..L_m around the segments x = i and wedges R_1..R_m,
    each the hull of the segment y = i and the previous wedge lifted by
    (0, y_i, 1). y_i doubles until the new wedge is apart from every
    earlier one by more than the intersection tolerance.

    Raises:
        GeneratorError: If some wedge cannot be separated
    """
    require_int_at_least("m", m, 1)
    w = WEDGE_HALF_WIDTH
    narrow = [Box((i - w, 1 - w, -w), (i + w, m + w, w)) for i in range(1, m + 1)]
    wedges: List[ConvexPolytope] = []
    previous = narrow[0].as_polytope()
    lifts = []
    for index in range(1, m + 1):
        lift = 1.0
        for _ in range(WEDGE_MAX_DOUBLINGS):
            candidate = _wedge(previous, index, m, lift)
            if all(_separated(candidate, other) for other in wedges):
                break
            lift *= 2
        else:
            raise GeneratorError(f"Wedge R_{index} could not be separated from the earlier wedges")
        if not le_k(previous, candidate, 1).held:
            raise GeneratorError(f"Wedge chain is not <=_1-ordered at R_{index}")
        wedges.append(candidate)
        lifts.append(lift)
        previous = candidate
    logger.debug(f"Wedge lifts for m={m}: {lifts}")
    representation = Representation(
        tuple(PlacedShape.at_origin(shape) for shape in narrow + wedges),
        tuple([f"L{i}" for i in range(1, m + 1)] + [f"R{i}" for i in range(1, m + 1)]))
    return geometric_bundle("wedge", {"m": m}, 0, representation,
                            expected_graph=complete_bipartite(m), expected_thinness=2,
                            extra={"lifts": lifts})


def path_representation(t: int) -> Representation:
    """Unit intervals [9j/10, 9j/10 + 1]: consecutive ones overlap by 1/10."""
    require_int_at_least("t", t, 1)
    return Representation(tuple(PlacedShape.at_origin(Box((PATH_STEP * j,), (PATH_STEP * j + 1,)))
                                for j in range(t)))


def star_representation(r: int) -> Representation:
    """
    Center square [0, 2r]^2 and r unit leaf squares straddling its top
    edge, 1/10 apart. Vertex 0 is the center.
    """
    require_int_at_least("r", r, 1)
    side = 2 * r
    half = Fraction(1, 2)
    shapes = [Box((0, 0), (side, side))]
    shapes += [Box((LEAF_STEP * j, side - half), (LEAF_STEP * j + 1, side + half)) for j in range(r)]
    return Representation(tuple(PlacedShape.at_origin(shape) for shape in shapes))


def star_path_boxes(r: int, t: int) -> InstanceBundle:
    """Product representation of T_r ⊠ P_t by boxes in R^3: 4-thin, ⊑_1-comparable."""
    representation = product_representation(star_representation(r), path_representation(t))
    return geometric_bundle("star-path", {"r": r, "t": t}, 0, representation,
                            expected_graph=strong_product(star_graph(r), path_graph(t)),
                            expected_thinness=2 if t == 1 else 4,
                            expected_s=Fraction(1))


def lshape_clique(m: int) -> InstanceBundle:
    """
    m L-shapes (unions of a vertical and a horizontal bar), copy i moved by
    (i, -i): every two copies cross, no three share a point.
    """
    require_int_at_least("m", m, 1)
    half = Fraction(1, 2)
    shape = BoxUnion((Box((0, 0), (half, m + 1)), Box((0, 0), (m + 1, half))))
    representation = Representation(tuple(PlacedShape(shape, (i, -i)) for i in range(m)))
    return geometric_bundle("lshape", {"m": m}, 0, representation,
                            expected_graph=complete_graph(m), expected_thinness=min(m, 2))
