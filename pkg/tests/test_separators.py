"""
Tests for balanced separators and the scaling fits.
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

from src.coloring.reach import volume_ordering
from src.generators.constructions import star_path_boxes
from src.models.graph import Graph, complete_graph, cycle_graph, grid_graph, path_graph
from src.models.ordering import Ordering
from src.separators.scaling import (
    ScalingFit, calibrated_bound_check, find_separator, fit_exponent, scaling_experiment, target_exponent,
)
from src.separators.separators import (
    METHOD_BFS, METHOD_ORDERING, bfs_layer_separator, exact_min_balanced_separator, is_balanced_separator,
    ordering_separator, verify_separator,
)
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


class TestBalance(unittest.TestCase):
    def test_middle_of_a_path(self):
        result = is_balanced_separator(path_graph(5), [2])
        self.assertEqual(result.component_sizes, (2, 2))
        self.assertTrue(result.balanced)
        self.assertEqual(result.balance_ratio, Fraction(2, 5))

    def test_clique_minus_one_vertex(self):
        self.assertFalse(is_balanced_separator(complete_graph(4), [0]).balanced)

    def test_grid_column(self):
        column = [row * 8 + 3 for row in range(8)]
        result = is_balanced_separator(grid_graph(8, 8), column)
        self.assertEqual(result.component_sizes, (32, 24))
        self.assertTrue(result.balanced)

    def test_unknown_vertex(self):
        with self.assertRaises(InvalidParameterError):
            is_balanced_separator(path_graph(3), [5])

    def test_verification_catches_wrong_sizes(self):
        graph = path_graph(6)
        result = is_balanced_separator(graph, [2])
        self.assertTrue(verify_separator(graph, result))
        self.assertFalse(verify_separator(path_graph(7), result))


class TestExactSeparator(unittest.TestCase):
    def test_known_sizes(self):
        cases = [(complete_graph(5), 2), (cycle_graph(8), 2), (complete_graph(9), 3), (path_graph(5), 1)]
        for graph, size in cases:
            result = exact_min_balanced_separator(graph)
            self.assertEqual(result.size, size, f"n={graph.n}")
            self.assertTrue(result.balanced)

    def test_cap(self):
        with self.assertRaises(SizeCapError):
            exact_min_balanced_separator(path_graph(17))


class TestHeuristics(unittest.TestCase):
    def test_bfs_layers_on_grids(self):
        for side in (8, 10):
            result = bfs_layer_separator(grid_graph(side, side))
            self.assertTrue(result.balanced)
            self.assertLessEqual(result.size, side)

    def test_bfs_layers_on_paths(self):
        for n in (3, 10, 41):
            result = bfs_layer_separator(path_graph(n))
            self.assertEqual(result.size, 1, f"n={n}")
            self.assertTrue(result.balanced)

    def test_ordering_separator_on_star_path(self):
        bundle = star_path_boxes(4, 12)
        result = ordering_separator(bundle.graph, volume_ordering(bundle.representation), 3)
        self.assertTrue(result.balanced)
        self.assertTrue(verify_separator(bundle.graph, result))

    def test_find_separator_dispatch(self):
        bundle = star_path_boxes(3, 8)
        self.assertEqual(find_separator(bundle, METHOD_ORDERING).method, METHOD_ORDERING)
        self.assertEqual(find_separator(bundle, METHOD_BFS).method, METHOD_BFS)
        with self.assertRaises(InvalidParameterError):
            find_separator(bundle, "spectral")


class TestScaling(unittest.TestCase):
    def test_target_exponents(self):
        self.assertAlmostEqual(target_exponent(1), 5 / 6)
        self.assertAlmostEqual(target_exponent(2), 0.875)
        self.assertAlmostEqual(target_exponent(3), 0.9)

    def test_fit_recovers_square_root(self):
        exponent, beta = fit_exponent([(16, 8), (64, 16), (256, 32), (1024, 64)])
        self.assertAlmostEqual(exponent, 0.5, places=9)
        self.assertAlmostEqual(beta, 2.0, places=6)

    def test_fit_needs_two_points(self):
        with self.assertRaises(InvalidParameterError):
            fit_exponent([(10, 3)])

    def test_calibrated_bound(self):
        points = ((16, 8), (64, 16), (256, 32), (1024, 64))
        fit = ScalingFit("random-box", 2, METHOD_BFS, points, 0.5, 2.0)
        self.assertTrue(fit.conclusive)
        rows = calibrated_bound_check(fit)
        self.assertEqual([row["n"] for row in rows], [16, 64, 256, 1024])
        self.assertTrue(all(row["ok"] for row in rows))

    def test_calibrated_bound_flags_growth(self):
        fit = ScalingFit("random-box", 2, METHOD_BFS, ((16, 2), (1024, 500)), 1.4, 0.04)
        self.assertFalse(fit.conclusive)
        rows = calibrated_bound_check(fit)
        self.assertTrue(rows[0]["ok"])
        self.assertFalse(rows[1]["ok"])

    def test_ladder_needs_four_sizes(self):
        with self.assertRaises(InvalidParameterError):
            scaling_experiment("random-box", [20, 40, 80])


class TestExactDominance(unittest.TestCase):
    def test_exact_is_never_beaten(self):
        rng = np.random.default_rng(41)
        for index, graph in enumerate(connected_sample(200, seed=40)):
            exact = exact_min_balanced_separator(graph)
            self.assertTrue(exact.balanced)
            shuffled = Ordering(tuple(int(v) for v in rng.permutation(graph.n)))
            heuristics = [bfs_layer_separator(graph), ordering_separator(graph, Ordering.identity(graph.n), 2),
                          ordering_separator(graph, shuffled, 2)]
            for result in heuristics:
                if result.balanced:
                    self.assertLessEqual(exact.size, result.size, f"graph {index}: {result.method}")


if __name__ == "__main__":
    unittest.main()
