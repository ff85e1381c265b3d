"""
Tests for reach sets, weak coloring profiles, the exact coloring number
and the bound constants.
"""
import sys
import unittest
from fractions import Fraction
from pathlib import Path

import networkx as nx
import numpy as np

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.coloring.conditions import GeneralizedRep, verify_generalized_conditions
from src.coloring.reach import (
    col_profile, delta_bound, growth_slope, reach_set, reach_set_bruteforce, strong_coloring_number_exact,
    theorem_constants, verify_hub_star_pattern, volume_ordering,
)
from src.generators.constructions import star_path_boxes, wedge_family
from src.generators.random_instances import random_box_instance
from src.generators.towers import hub_star_family
from src.harness.experiment import coloring_table
from src.models.graph import Graph, Representation, complete_graph, cycle_graph, grid_graph, path_graph
from src.models.ordering import Ordering
from src.models.shapes import Box, PlacedShape
from src.utils.errors import InvalidParameterError, SizeCapError


def connected_sample(count: int, seed: int):
    """Seeded connected G(n, p) graphs with 3 <= n <= 8, then paths, cycles and cliques."""
    rng = np.random.default_rng(seed)
    graphs = []
    while len(graphs) < count:
        n = int(rng.integers(3, 9))
        candidate = nx.gnp_random_graph(n, float(rng.uniform(0.25, 0.8)), seed=int(rng.integers(2 ** 31)))
        if nx.is_connected(candidate):
            graphs.append(Graph.from_networkx(candidate))
    for n in range(3, 9):
        graphs += [path_graph(n), cycle_graph(n), complete_graph(n)]
    return graphs


def boxes_representation(boxes):
    return Representation(tuple(PlacedShape.at_origin(box) for box in boxes))


class TestReachSets(unittest.TestCase):
    def test_path_of_three(self):
        graph = path_graph(3)
        self.assertEqual(reach_set(graph, Ordering.identity(3), 2, 2), {2, 1})

    def test_zero_radius(self):
        self.assertEqual(reach_set(cycle_graph(5), Ordering.identity(5), 0, 3), {3})

    def test_last_vertex_of_clique(self):
        ordering = Ordering((2, 0, 3, 1))
        self.assertEqual(reach_set(complete_graph(4), ordering, 1, 1), {0, 1, 2, 3})

    def test_unknown_vertex(self):
        with self.assertRaises(InvalidParameterError):
            reach_set(path_graph(3), Ordering.identity(3), 1, 7)

    def test_matches_path_enumeration(self):
        graph = grid_graph(3, 3)
        ordering = Ordering((4, 0, 8, 2, 6, 1, 3, 5, 7))
        for r in range(0, 7):
            for v in graph.vertices():
                self.assertEqual(reach_set(graph, ordering, r, v), reach_set_bruteforce(graph, ordering, r, v),
                                 f"r={r} v={v}")


class TestProfiles(unittest.TestCase):
    def test_path_profile_is_constant(self):
        profile = col_profile(path_graph(10), Ordering.identity(10), 6)
        self.assertEqual(profile.values(), [2] * 6)

    def test_clique_profile(self):
        profile = col_profile(complete_graph(5), Ordering((3, 1, 4, 0, 2)), 3)
        self.assertEqual(profile.values(), [5, 5, 5])
        self.assertEqual(profile.value(1), 5)

    def test_rows(self):
        rows = col_profile(path_graph(4), Ordering.identity(4), 2).to_rows()
        self.assertEqual(rows[0], {"r": 1, "col": 2, "argmax_vertex": 1})

    def test_growth_slope_of_constant_profile(self):
        profile = col_profile(path_graph(10), Ordering.identity(10), 4)
        self.assertAlmostEqual(growth_slope(profile), 0.0)

    def test_exact_coloring_numbers(self):
        self.assertEqual(strong_coloring_number_exact(complete_graph(3), 1)[0], 3)
        self.assertEqual(strong_coloring_number_exact(cycle_graph(5), 2)[0], 3)
        for r in (1, 2, 3):
            self.assertEqual(strong_coloring_number_exact(path_graph(3), r)[0], 2)

    def test_exact_witness_attains_value(self):
        value, ordering = strong_coloring_number_exact(cycle_graph(6), 2)
        self.assertEqual(col_profile(cycle_graph(6), ordering, 2).value(2), value)

    def test_exact_is_below_any_ordering(self):
        graph = grid_graph(2, 4)
        value, _ = strong_coloring_number_exact(graph, 2)
        self.assertLessEqual(value, col_profile(graph, Ordering.identity(8), 2).value(2))

    def test_exact_cap(self):
        with self.assertRaises(SizeCapError):
            strong_coloring_number_exact(path_graph(12), 1)


class TestOrderingAndConstants(unittest.TestCase):
    def test_volume_ordering(self):
        boxes = [Box((0, 0), (2, 2)), Box((0, 0), (1, 1)), Box((0, 0), (2, 1))]
        self.assertEqual(volume_ordering(boxes_representation(boxes)).order, (0, 2, 1))

    def test_equal_volumes_keep_ids(self):
        boxes = [Box((i, 0), (i + 1, 1)) for i in range(4)]
        self.assertEqual(volume_ordering(boxes_representation(boxes)).order, (0, 1, 2, 3))

    def test_wedges_precede_narrow_boxes(self):
        bundle = wedge_family(3)
        order = volume_ordering(bundle.representation).order
        self.assertEqual(set(order[:3]), {3, 4, 5})

    def test_delta_bound(self):
        self.assertEqual(delta_bound(1, 1, 1, 1), 6)
        self.assertEqual(delta_bound(4, 1, 3, 1), 5832)
        self.assertEqual(delta_bound(1, 1, 2, 2), 200)

    def test_theorem_constants_on_the_line(self):
        self.assertEqual(theorem_constants(1, 1, 1), (Fraction(1), Fraction(1), Fraction(6)))

    def test_star_path_profile_within_bound(self):
        bundle = star_path_boxes(4, 6)
        table = coloring_table(bundle, volume_ordering(bundle.representation), 8)
        self.assertIsNotNone(table.constants)
        self.assertEqual(table.violations, 0)
        self.assertEqual(len(table.rows()), 8)

    def test_infinite_comparability_gives_no_bound(self):
        bundle = star_path_boxes(2, 2)
        table = coloring_table(bundle, volume_ordering(bundle.representation), 3, s=float("inf"))
        self.assertIsNone(table.constants)
        self.assertTrue(table.header()[0].startswith("no geometric bound"))
        self.assertEqual(table.violations, 0)

    def test_random_boxes_within_bound(self):
        bundle = random_box_instance(60, 2, seed=4)
        table = coloring_table(bundle, volume_ordering(bundle.representation), 6)
        self.assertEqual(table.violations, 0)


class TestHubStarPattern(unittest.TestCase):
    def test_single_level(self):
        bundle = hub_star_family((4, 3), (3,))
        for r in range(1, 7):
            self.assertEqual(verify_hub_star_pattern(bundle.graph, bundle.ordering, bundle.levels, r), [],
                             f"r={r}")

    def test_two_levels(self):
        bundle = hub_star_family((2, 1, 1), (3, 3))
        self.assertEqual(bundle.n, 22)
        for r in range(1, 9):
            self.assertEqual(verify_hub_star_pattern(bundle.graph, bundle.ordering, bundle.levels, r), [],
                             f"r={r}")

    def test_violation_reported(self):
        bundle = hub_star_family((4, 1), (2,))
        reversed_order = Ordering(tuple(reversed(range(bundle.n))))
        violations = verify_hub_star_pattern(bundle.graph, reversed_order, bundle.levels, 1)
        self.assertTrue(violations)


class TestGeneralizedConditions(unittest.TestCase):
    def test_identical_assignment_passes(self):
        bundle = star_path_boxes(2, 2)
        ordering = volume_ordering(bundle.representation)
        k_prime, s_prime, _ = theorem_constants(4, 1, 3)
        report = verify_generalized_conditions(GeneralizedRep.identical(bundle.representation), bundle.graph,
                                               ordering, 4, k_prime, s_prime)
        self.assertTrue(report.passed)
        self.assertEqual(report.measured_c, 4)

    def test_inner_outside_outer(self):
        outer = boxes_representation([Box((0, 0), (1, 1)), Box((2, 2), (3, 3))])
        inner = boxes_representation([Box((0, 0), (2, 2)), Box((2, 2), (3, 3))])
        report = verify_generalized_conditions(GeneralizedRep(inner, outer), Graph.from_edges(2, []),
                                               Ordering.identity(2), 2, 1, 1)
        self.assertFalse(report.containment)
        self.assertEqual(report.witnesses["a"], [0])

    def test_edge_between_disjoint_shapes(self):
        shapes = boxes_representation([Box((0, 0), (1, 1)), Box((2, 2), (3, 3))])
        report = verify_generalized_conditions(GeneralizedRep.identical(shapes), Graph.from_edges(2, [(0, 1)]),
                                               Ordering.identity(2), 2, 1, 1)
        self.assertFalse(report.edges_meet)
        self.assertEqual(report.witnesses["d"], [(0, 1)])


class TestExactDominance(unittest.TestCase):
    def test_exact_is_at_most_every_ordering(self):
        rng = np.random.default_rng(31)
        for index, graph in enumerate(connected_sample(200, seed=30)):
            orderings = [Ordering.identity(graph.n), Ordering(tuple(reversed(range(graph.n)))),
                         Ordering(tuple(int(v) for v in rng.permutation(graph.n)))]
            profiles = [col_profile(graph, ordering, 2) for ordering in orderings]
            for r in (1, 2):
                exact, witness = strong_coloring_number_exact(graph, r)
                self.assertEqual(col_profile(graph, witness, r).value(r), exact, f"graph {index}, r={r}")
                for profile in profiles:
                    self.assertLessEqual(exact, profile.value(r), f"graph {index}, r={r}")


if __name__ == "__main__":
    unittest.main()
