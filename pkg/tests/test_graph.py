"""
Tests for intersection graphs, thinness, tameness certificates, the box
dichotomy and strong products.
"""
import sys
import unittest
from fractions import Fraction
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.generators.constructions import (
    lshape_clique, path_representation, star_path_boxes, star_representation, wedge_family,
)
from src.generators.random_instances import random_box_family
from src.graphs.dichotomy import COMMON_POINT_BRANCH, DISJOINT_BRANCH, boxes_dichotomy, verify_dichotomy
from src.graphs.intersection import build_intersection_graph, pairwise_intersection_graph
from src.graphs.products import (
    CONJUNCTION_MODE, product_representation, strong_product, strong_product_oracle,
)
from src.graphs.tameness import arrangement_depth, box_depth, check_tame, thinness
from src.models.graph import (
    Graph, Representation, complete_graph, cycle_graph, grid_graph, path_graph, star_graph,
)
from src.models.results import CertificateStatus
from src.models.shapes import Box, PlacedShape
from src.utils.errors import InvalidParameterError


def boxes_representation(boxes):
    return Representation(tuple(PlacedShape.at_origin(box) for box in boxes))


class TestGraphModel(unittest.TestCase):
    def test_from_edges_merges_duplicates(self):
        graph = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)])
        self.assertEqual(graph.edge_count, 2)
        self.assertEqual(graph.neighbors(1), (0, 2))

    def test_self_loop_rejected(self):
        with self.assertRaises(InvalidParameterError):
            Graph.from_edges(2, [(1, 1)])

    def test_standard_families(self):
        self.assertEqual(path_graph(5).edge_count, 4)
        self.assertEqual(cycle_graph(5).edge_count, 5)
        self.assertEqual(complete_graph(4).edge_count, 6)
        self.assertEqual(star_graph(3).degree(0), 3)
        self.assertEqual(grid_graph(3, 4).edge_count, 3 * 3 + 2 * 4)

    def test_components_after_removal(self):
        components = path_graph(5).components([2])
        self.assertEqual(components, [[0, 1], [3, 4]])

    def test_networkx_round_trip(self):
        graph = cycle_graph(6)
        self.assertEqual(Graph.from_networkx(graph.to_networkx()), graph)
        self.assertTrue(graph.is_bipartite())


class TestIntersectionGraph(unittest.TestCase):
    def test_disjoint_squares_are_edgeless(self):
        graph = build_intersection_graph(boxes_representation([Box((0, 0), (1, 1)), Box((2, 0), (3, 1))]))
        self.assertEqual(graph.n, 2)
        self.assertEqual(graph.edge_count, 0)

    def test_touching_squares_are_adjacent(self):
        graph = build_intersection_graph(boxes_representation([Box((0, 0), (1, 1)), Box((1, 1), (2, 2))]))
        self.assertTrue(graph.has_edge(0, 1))

    def test_wedge_family_is_complete_bipartite(self):
        bundle = wedge_family(3)
        self.assertEqual(bundle.n, 6)
        self.assertEqual(bundle.graph.edge_count, 9)
        self.assertTrue(bundle.graph.is_bipartite())

    def test_star_path_matches_strong_product(self):
        bundle = star_path_boxes(3, 4)
        self.assertEqual(bundle.n, 16)
        self.assertEqual(bundle.graph, strong_product(star_graph(3), path_graph(4)))

    def test_sweep_matches_pairwise_oracle(self):
        for seed in range(5):
            representation = boxes_representation(random_box_family(40, 2, seed))
            self.assertEqual(build_intersection_graph(representation),
                             pairwise_intersection_graph(representation))


class TestThinness(unittest.TestCase):
    def test_single_shape(self):
        self.assertEqual(thinness(boxes_representation([Box((0, 0), (1, 1))])).c, 1)

    def test_constructions(self):
        self.assertEqual(wedge_family(4).measured_c, 2)
        self.assertEqual(star_path_boxes(3, 3).measured_c, 4)

    def test_touching_points_count(self):
        boxes = [Box((0, 0), (1, 1)), Box((1, 0), (2, 1)), Box((0, 1), (1, 2)), Box((1, 1), (2, 2))]
        result = thinness(boxes_representation(boxes))
        self.assertEqual(result.c, 4)
        self.assertEqual(result.status, CertificateStatus.EXACT)

    def test_matches_arrangement_depth(self):
        for seed in range(10):
            representation = boxes_representation(random_box_family(30, 1 + seed % 3, seed))
            self.assertEqual(thinness(representation).c, arrangement_depth(representation), f"seed {seed}")

    def test_box_depth_allows_flat_pieces(self):
        extents = [((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))),
                   ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1)))]
        self.assertEqual(box_depth(extents), 2)
        self.assertEqual(box_depth([]), 0)


class TestTameness(unittest.TestCase):
    def test_star_path_is_tame(self):
        bundle = star_path_boxes(5, 5)
        certificate = check_tame(bundle.representation, 4, 1)
        self.assertTrue(certificate.passed)
        self.assertEqual(certificate.status, CertificateStatus.EXACT)
        self.assertEqual(certificate.measured_c, 4)

    def test_coincident_squares_break_thinness(self):
        square = Box((0, 0), (1, 1))
        certificate = check_tame(boxes_representation([square] * 3), 2, 1)
        self.assertFalse(certificate.passed)
        self.assertFalse(certificate.thin)
        self.assertEqual(certificate.witness["kind"], "thickness")
        self.assertEqual(certificate.witness["depth"], 3)

    def test_lshapes_are_rejected(self):
        certificate = check_tame(lshape_clique(4).representation, 2, 1)
        self.assertFalse(certificate.passed)
        self.assertFalse(certificate.convex)
        self.assertEqual(certificate.witness["kind"], "non_convex")

    def test_crossing_rectangles_are_not_comparable(self):
        thin = Fraction(1, 40)
        certificate = check_tame(boxes_representation([Box((0, 0), (5, thin)), Box((0, 0), (thin, 5))]), 2, 1)
        self.assertTrue(certificate.thin)
        self.assertFalse(certificate.comparable)
        self.assertEqual(certificate.witness["kind"], "incomparable")


class TestDichotomy(unittest.TestCase):
    def test_disjoint_intervals(self):
        boxes = [Box((3 * i,), (3 * i + 1,)) for i in range(4)]
        result = boxes_dichotomy(boxes, 2)
        self.assertEqual(result.branch, DISJOINT_BRANCH)
        self.assertEqual(len(result.indices), 2)
        self.assertTrue(verify_dichotomy(boxes, 2, result))

    def test_identical_boxes_share_a_point(self):
        boxes = [Box((0, 0), (1, 1))] * 5
        result = boxes_dichotomy(boxes, 3)
        self.assertEqual(result.branch, COMMON_POINT_BRANCH)
        self.assertEqual(result.indices, tuple(range(5)))
        self.assertTrue(verify_dichotomy(boxes, 3, result))

    def test_random_families_verify(self):
        for seed in range(20):
            boxes = random_box_family(100, 2, seed)
            result = boxes_dichotomy(boxes, 3)
            self.assertTrue(verify_dichotomy(boxes, 3, result), f"seed {seed}")

    def test_tampered_certificate_fails(self):
        boxes = [Box((3 * i,), (3 * i + 1,)) for i in range(4)]
        result = boxes_dichotomy(boxes, 2)
        self.assertFalse(verify_dichotomy(boxes, 3, result))

    def test_empty_family(self):
        with self.assertRaises(InvalidParameterError):
            boxes_dichotomy([], 2)


class TestProducts(unittest.TestCase):
    def test_small_products(self):
        self.assertEqual(strong_product(path_graph(2), path_graph(2)), complete_graph(4))
        self.assertEqual(strong_product(star_graph(1), path_graph(1)), complete_graph(2))

    def test_matches_networkx(self):
        first, second = star_graph(3), path_graph(4)
        self.assertEqual(strong_product(first, second), strong_product_oracle(first, second))

    def test_representation_product_gives_star_path(self):
        representation = product_representation(star_representation(3), path_representation(4))
        self.assertEqual(representation.dimension, 3)
        self.assertEqual(build_intersection_graph(representation), strong_product(star_graph(3), path_graph(4)))

    def test_single_vertex_product(self):
        first = boxes_representation([Box((0,), (1,))])
        second = boxes_representation([Box((0, 0), (2, 3))])
        representation = product_representation(first, second)
        self.assertEqual(representation.n, 1)
        self.assertEqual(representation[0].region, Box((0, 0, 0), (1, 2, 3)))

    def test_conjunction_with_itself(self):
        path = path_representation(5)
        conjunction = product_representation(path, path, CONJUNCTION_MODE)
        self.assertEqual(conjunction.dimension, 2)
        self.assertEqual(build_intersection_graph(conjunction), path_graph(5))


if __name__ == "__main__":
    unittest.main()
