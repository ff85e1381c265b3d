"""
Tests for shapes, measures, predicates and envelopes.
"""
import math
import sys
import unittest
from fractions import Fraction
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.geometry.envelope import check_envelope_quality, envelope, inscribed_ball_bound
from src.geometry.measures import diameter, height, scale, translate, volume
from src.geometry.oracles import (
    direction_pair_envelope_area, direction_sweep_height, monte_carlo_intersection_volume, monte_carlo_volume,
)
from src.geometry.predicates import (
    check_translate_union_bound, contains, contains_point, intersection_volume, intersects,
)
from src.models.shapes import Box, BoxUnion, ConvexPolytope, PlacedShape
from src.utils.errors import DegenerateShapeError, DimensionMismatchError, PreconditionError


def square(lo, hi):
    return PlacedShape.at_origin(Box((lo, lo), (hi, hi)))


def triangle(side=1.0):
    return ConvexPolytope.from_points([(0, 0), (side, 0), (side / 2, side * math.sqrt(3) / 2)])


class TestShapes(unittest.TestCase):
    def test_box_rejects_degenerate_extent(self):
        with self.assertRaises(DegenerateShapeError):
            Box((0, 0), (1, 0))

    def test_box_keeps_rationals(self):
        box = Box(("1/3", 0), (1, "1/2"))
        self.assertEqual(box.extents, (Fraction(2, 3), Fraction(1, 2)))
        self.assertEqual(box.volume, Fraction(1, 3))

    def test_polytope_keeps_only_hull_vertices(self):
        polytope = ConvexPolytope.from_points([(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5)])
        self.assertEqual(len(polytope.vertices), 4)

    def test_box_union_is_not_convex(self):
        union = BoxUnion((Box((0, 0), (1, 3)), Box((0, 0), (3, 1))))
        self.assertFalse(union.is_convex)
        self.assertEqual(union.volume, 5)


class TestMeasures(unittest.TestCase):
    def test_scale_identity_and_doubling(self):
        unit = Box((0, 0), (1, 1))
        self.assertEqual(scale(unit, 1), unit)
        self.assertEqual(scale(Box((-1, -1), (1, 1)), 2), Box((-2, -2), (2, 2)))

    def test_scale_triangle_vertexwise(self):
        scaled = scale(ConvexPolytope.from_points([(0, 0), (1, 0), (0, 1)]), 3)
        self.assertEqual(set(scaled.vertices), {(0.0, 0.0), (3.0, 0.0), (0.0, 3.0)})

    def test_translate_box_is_exact(self):
        moved = translate(Box((0, 0), (1, 1)), ("1/2", "-1/3"))
        self.assertEqual(moved.lo, (Fraction(1, 2), Fraction(-1, 3)))

    def test_box_volume(self):
        self.assertEqual(volume(Box((0, 0), (2, 1))), 2)

    def test_simplex_volume(self):
        simplex = ConvexPolytope.from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        self.assertAlmostEqual(volume(simplex), 1 / 6, places=9)

    def test_polytope_volume_matches_monte_carlo(self):
        hexagon = ConvexPolytope.from_points([(math.cos(a), math.sin(a))
                                              for a in [k * math.pi / 3 for k in range(6)]])
        estimate, error = monte_carlo_volume(hexagon, samples=200_000, seed=3)
        self.assertLess(abs(estimate - volume(hexagon)), 3 * error + 1e-9)

    def test_heights(self):
        self.assertEqual(height(Box((0, 0), (2, 1))), 1)
        self.assertAlmostEqual(height(triangle()), math.sqrt(3) / 2, places=9)
        self.assertAlmostEqual(direction_sweep_height(triangle(), 10**5), math.sqrt(3) / 2, places=4)
        self.assertEqual(height(Box((0, 0), (1, "1/1000"))), Fraction(1, 1000))

    def test_diameters(self):
        self.assertAlmostEqual(diameter(Box((0, 0), (1, 1))), math.sqrt(2))
        self.assertAlmostEqual(diameter(Box((0, 0), (3, 4))), 5.0)
        hexagon = ConvexPolytope.from_points([(math.cos(a), math.sin(a))
                                              for a in [k * math.pi / 3 for k in range(6)]])
        self.assertAlmostEqual(diameter(hexagon), 2.0)


class TestPredicates(unittest.TestCase):
    def test_touching_boxes_intersect(self):
        self.assertTrue(intersects(square(0, 1), square(1, 2)))

    def test_separated_boxes_do_not_intersect(self):
        self.assertFalse(intersects(square(0, 1), square("3/2", 2)))

    def test_close_polygons_intersect(self):
        disk = ConvexPolytope.from_points([(math.cos(2 * math.pi * k / 32), math.sin(2 * math.pi * k / 32))
                                           for k in range(32)])
        first = PlacedShape.at_origin(disk)
        second = PlacedShape(disk, (1.99, 0.0))
        self.assertTrue(intersects(first, second))
        self.assertFalse(intersects(first, PlacedShape(disk, (2.5, 0.0))))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            intersects(square(0, 1), PlacedShape.at_origin(Box((0,), (1,))))

    def test_intersection_volume(self):
        self.assertEqual(intersection_volume(square(0, 2), square(1, 3)), 1)
        self.assertEqual(intersection_volume(square(0, 1), square(2, 3)), 0)

    def test_polytope_overlap_matches_monte_carlo(self):
        first = PlacedShape.at_origin(triangle(2.0))
        second = PlacedShape(triangle(2.0), (0.5, 0.2))
        estimate, error = monte_carlo_intersection_volume(first, second, samples=200_000, seed=5)
        self.assertLess(abs(estimate - intersection_volume(first, second)), 3 * error + 1e-9)

    def test_containment(self):
        self.assertTrue(contains(square(0, 2), square("1/2", 1)))
        self.assertFalse(contains(square(0, 1), square("1/2", 2)))
        self.assertTrue(contains_point(square(0, 1), (1, 1)))

    def test_translate_union_bound_for_boxes(self):
        result = check_translate_union_bound(Box((0, 0), (1, 1)), Box((-1, -1), (1, 1)), trials=200)
        self.assertTrue(result.holds)

    def test_translate_union_needs_symmetry(self):
        with self.assertRaises(PreconditionError):
            check_translate_union_bound(Box((0, 0), (1, 1)), Box((0, 0), (1, 1)))


class TestEnvelope(unittest.TestCase):
    def test_box_is_its_own_envelope(self):
        result = envelope(Box((0, 0), (2, 1)))
        self.assertEqual(result.center, (Fraction(1), Fraction(1, 2)))
        self.assertEqual(result.sides, ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1, 2))))
        self.assertTrue(check_envelope_quality(Box((0, 0), (2, 1)), result))

    def test_triangle_envelope_passes_quality_check(self):
        shape = ConvexPolytope.from_points([(0, 0), (1, 0), (0, 1)])
        result = envelope(shape)
        self.assertTrue(check_envelope_quality(shape, result))
        self.assertGreaterEqual(float(result.volume), volume(shape) - 1e-9)

    def test_rotated_square_envelope_is_the_square(self):
        diamond = ConvexPolytope.from_points([(1, 0), (0, 1), (-1, 0), (0, -1)])
        self.assertAlmostEqual(float(envelope(diamond).volume), 2.0, places=6)

    def test_envelope_against_direction_pairs(self):
        diamond = ConvexPolytope.from_points([(1, 0), (0, 1), (-1, 0), (0, -1)])
        sampled = direction_pair_envelope_area(diamond, seed=2)
        self.assertAlmostEqual(sampled, 2.0, delta=0.15)
        self.assertLessEqual(float(envelope(diamond).volume), sampled + 1e-6)

    def test_inscribed_balls(self):
        self.assertEqual(inscribed_ball_bound(Box((0, 0), (2, 1))), 1)
        self.assertEqual(inscribed_ball_bound(Box((0, 0, 0), (1, 1, 1))), 1)
        self.assertAlmostEqual(inscribed_ball_bound(triangle()), 1 / math.sqrt(3), places=6)


if __name__ == "__main__":
    unittest.main()
