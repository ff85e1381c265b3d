"""
Tests for the comparability relations, their implications and the
interval counting bound.
"""
import math
import sys
import unittest
from fractions import Fraction
from itertools import permutations
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.generators.random_instances import interval_family_pair, random_box_family
from src.generators.sstar import sstar_family
from src.models.results import CombipStatus, IntervalFamily, Verdict
from src.models.shapes import Box, ConvexPolytope
from src.relations.comparability import (
    comparability_scan, le_k, le_ks, required_s, sqsubseteq_oracle, sqsubseteq_s,
)
from src.relations.cube_section import cube_section_constant, measure_cube_section
from src.relations.lemmas import (
    cmp_factor, combip_check, incomparability_threshold, rel2_factor, verify_cmp, verify_rel1, verify_rel2,
)
from src.utils.errors import PreconditionError, UnsupportedDimensionError

UNIT = Box((0, 0), (1, 1))
DOUBLE = Box((0, 0), (2, 2))
WIDE = Box((0, 0), (2, 1))

SQUARE = ConvexPolytope.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])
BIG_SQUARE = ConvexPolytope.from_points([(0, 0), (2, 0), (2, 2), (0, 2)])
HEXAGON = ConvexPolytope.from_points([(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(6)])


class TestScaledContainment(unittest.TestCase):
    def test_identity(self):
        self.assertTrue(le_k(UNIT, UNIT, 1).held)

    def test_wide_box_needs_factor_two(self):
        self.assertTrue(le_k(WIDE, UNIT, 1).failed)
        self.assertTrue(le_k(WIDE, UNIT, 2).held)

    def test_triangle_fits_in_its_bounding_square(self):
        triangle = ConvexPolytope.from_points([(0, 0), (1, 0), (0, 1)])
        square = ConvexPolytope.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])
        self.assertTrue(le_k(triangle, square, 1).held)

    def test_le_ks_examples(self):
        self.assertTrue(le_ks(WIDE, WIDE, 1, 1).held)
        self.assertTrue(le_ks(UNIT, DOUBLE, 1, 1).held)
        self.assertTrue(le_ks(DOUBLE, UNIT, 1, 1).failed)

    def test_monotone_in_k(self):
        boxes = random_box_family(12, 2, seed=5)
        for first, second in permutations(boxes, 2):
            verdicts = [le_k(first, second, k).held for k in (1, 2, 3, 4, 6)]
            self.assertEqual(verdicts, sorted(verdicts), f"{first} vs {second}")

    def test_transitive_at_one(self):
        self.assertTrue(le_k(UNIT, WIDE, 1).held and le_k(WIDE, DOUBLE, 1).held)
        self.assertTrue(le_k(UNIT, DOUBLE, 1).held)
        boxes = random_box_family(10, 2, seed=9)
        for a, b, c in permutations(boxes, 3):
            if le_k(a, b, 1).held and le_k(b, c, 1).held:
                self.assertTrue(le_k(a, c, 1).held, f"{a}, {b}, {c}")


class TestOverlapComparability(unittest.TestCase):
    def test_small_in_large(self):
        self.assertTrue(sqsubseteq_s(UNIT, DOUBLE, 1).held)

    def test_large_in_small_threshold(self):
        self.assertTrue(sqsubseteq_s(DOUBLE, UNIT, 4).held)
        result = sqsubseteq_s(DOUBLE, UNIT, 3)
        self.assertEqual(result.verdict, Verdict.FAILS)
        self.assertEqual(result.witness, (0, 0))

    def test_reflexive(self):
        self.assertTrue(sqsubseteq_s(WIDE, WIDE, 1).held)

    def test_required_s(self):
        self.assertEqual(required_s(DOUBLE, UNIT), (Fraction(4), True))
        self.assertEqual(required_s(UNIT, DOUBLE), (Fraction(1), True))

    def test_oracle_agrees_with_closed_form(self):
        for s in (3, 4, 5):
            exact = sqsubseteq_s(DOUBLE, UNIT, s)
            sampled = sqsubseteq_oracle(DOUBLE, UNIT, s, probes=500, seed=s)
            self.assertEqual(exact.verdict, sampled.verdict, f"s={s}")

    def test_monotone_in_s(self):
        boxes = random_box_family(12, 2, seed=6)
        for first, second in permutations(boxes, 2):
            verdicts = [sqsubseteq_s(first, second, s).held for s in (1, 2, 4, 8, 16, 36)]
            self.assertEqual(verdicts, sorted(verdicts), f"{first} vs {second}")

    def test_polygon_is_reflexive(self):
        self.assertTrue(sqsubseteq_s(HEXAGON, HEXAGON, 1).held)
        value, exact = required_s(HEXAGON, HEXAGON)
        self.assertFalse(exact)
        self.assertAlmostEqual(value, 1.0, places=6)

    def test_polygon_backend_matches_boxes(self):
        self.assertTrue(sqsubseteq_s(SQUARE, BIG_SQUARE, 1).held)
        self.assertTrue(sqsubseteq_s(BIG_SQUARE, SQUARE, 4).held)
        self.assertEqual(sqsubseteq_s(BIG_SQUARE, SQUARE, 3).verdict, Verdict.FAILS)

    def test_polygon_required_s(self):
        value, exact = required_s(BIG_SQUARE, SQUARE)
        self.assertFalse(exact)
        self.assertAlmostEqual(value, 4.0, places=6)
        self.assertAlmostEqual(required_s(SQUARE, BIG_SQUARE)[0], 1.0, places=6)

    def test_trapezoid_and_square_need_three_halves(self):
        family = sstar_family(2)
        shapes = [family.trapezoids[0], family.squares[0], family.trapezoids[1]]
        scan = comparability_scan(shapes, 1)
        self.assertFalse(scan.exact)
        self.assertGreaterEqual(float(scan.s_star), 1.5 - 1e-6)

    def test_scan_of_two_squares(self):
        scan = comparability_scan([UNIT, DOUBLE], 1)
        self.assertTrue(scan.all_comparable)
        self.assertEqual(scan.s_star, 1)

    def test_scan_of_singleton(self):
        scan = comparability_scan([UNIT, UNIT], 1)
        self.assertEqual(scan.reports, ())
        self.assertEqual(scan.shape_index, (0, 0))
        self.assertEqual(scan.s_star, 1)

    def test_crossing_rectangles_are_incomparable(self):
        thin = Fraction(1, 40)
        horizontal, vertical = Box((0, 0), (5, thin)), Box((0, 0), (thin, 5))
        scan = comparability_scan([horizontal, vertical], 1)
        self.assertFalse(scan.all_comparable)
        self.assertEqual(len(scan.incomparable), 1)
        self.assertEqual(scan.s_star, 200)


class TestConstants(unittest.TestCase):
    def test_cube_sections(self):
        self.assertEqual(cube_section_constant(1), 1.0)
        self.assertAlmostEqual(cube_section_constant(2), math.sqrt(2), places=6)
        self.assertAlmostEqual(cube_section_constant(3), math.sqrt(2), places=4)
        with self.assertRaises(UnsupportedDimensionError):
            cube_section_constant(4)

    def test_measured_square_section(self):
        self.assertAlmostEqual(measure_cube_section(2, samples=2000, seed=1), math.sqrt(2), delta=1e-2)

    def test_rel2_factor_in_the_plane(self):
        self.assertAlmostEqual(float(rel2_factor(1, 2)), 16.0, places=6)

    def test_cmp_factor_is_at_least_s(self):
        self.assertAlmostEqual(float(cmp_factor(1, 2)), 256.0, places=4)
        self.assertGreaterEqual(cmp_factor(3, 1), 3)

    def test_incomparability_threshold(self):
        self.assertAlmostEqual(incomparability_threshold(2, 4), 2 * 2 ** 2.5 * 4)


class TestImplications(unittest.TestCase):
    def test_rel1_example(self):
        first, second = Box((0, 0), (3, 1)), Box((0, 0), (2, 2))
        self.assertTrue(le_ks(first, second, 2, 2).held)
        self.assertTrue(sqsubseteq_s(first, second, 16).held)
        self.assertTrue(verify_rel1(first, second, 2, 2))

    def test_rel1_failing_antecedent_is_vacuous(self):
        self.assertTrue(le_ks(DOUBLE, UNIT, 1, 1).failed)
        self.assertTrue(verify_rel1(DOUBLE, UNIT, 1, 1))

    def test_rel2_example(self):
        self.assertTrue(verify_rel2(UNIT, DOUBLE, 1))
        self.assertTrue(verify_rel2(UNIT, UNIT, 1))

    def test_cmp_examples(self):
        self.assertTrue(verify_cmp(UNIT, DOUBLE, 1))
        self.assertTrue(verify_cmp(WIDE, WIDE, 1))

    def test_cmp_checks_volume_order(self):
        with self.assertRaises(PreconditionError):
            verify_cmp(DOUBLE, UNIT, 4)


class TestIntervalCounting(unittest.TestCase):
    def test_premise_unmet(self):
        first = IntervalFamily.from_endpoints([(3 * i, 3 * i + 1) for i in range(5)])
        second = IntervalFamily.from_endpoints([(0, 1)])
        result = combip_check(first, second, 40, 1)
        self.assertEqual(result.status, CombipStatus.PREMISE_UNMET)

    def test_clustered_family_holds(self):
        first = IntervalFamily.from_endpoints([(2 * i, 2 * i + 1) for i in range(10)])
        second = IntervalFamily.from_endpoints([(-100, -99)])
        result = combip_check(first, second, 400, 1)
        self.assertEqual(result.status, CombipStatus.HOLDS)
        self.assertEqual(result.bound, 2 * 400 * 400)

    def test_violated_premise_raises(self):
        overlapping = IntervalFamily.from_endpoints([(0, 2), (1, 3)])
        with self.assertRaises(PreconditionError):
            combip_check(overlapping, IntervalFamily.from_endpoints([(0, 1)]), 4, 2)

    def test_generated_pairs_never_violate(self):
        for seed in range(40):
            s_prime = 1 + seed % 4
            first, second, l = interval_family_pair(seed, s_prime)
            result = combip_check(first, second, l, s_prime)
            self.assertNotEqual(result.status, CombipStatus.VIOLATED, f"seed {seed}")


if __name__ == "__main__":
    unittest.main()
