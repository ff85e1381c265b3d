"""
Tests for seeds, instance files, experiment configs and the command line.
"""
import json
import sys
import tempfile
import unittest
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.generators.constructions import star_path_boxes
from src.generators.towers import hub_star_family
from src.harness.experiment import ExperimentConfig, run_experiment
from src.main import main
from src.utils.constants import EXIT_OK, EXIT_OPERATIONAL_ERROR, EXIT_VIOLATION
from src.utils.errors import ConfigError, InstanceFormatError
from src.utils.io_handler import load_instance, load_ordering, save_instance, write_json
from src.utils.seeds import derive_seed


class TestSeeds(unittest.TestCase):
    def test_deterministic(self):
        self.assertEqual(derive_seed(7, 3, "generate"), derive_seed(7, 3, "generate"))

    def test_stages_differ(self):
        self.assertNotEqual(derive_seed(7, 3, "generate"), derive_seed(7, 3, "suite"))
        self.assertNotEqual(derive_seed(7, 3, "generate"), derive_seed(7, 4, "generate"))
        self.assertLess(derive_seed(0, 0, "x"), 2 ** 64)


class TestInstanceFiles(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_geometric_round_trip(self):
        bundle = star_path_boxes(2, 3)
        path = self.dir / "star-path.json"
        save_instance(bundle, path)
        loaded = load_instance(path)
        self.assertEqual(loaded.representation, bundle.representation)
        self.assertEqual(loaded.graph, bundle.graph)
        self.assertEqual(loaded.measured_c, 4)
        self.assertEqual(loaded.provenance()["generator"], "star-path")

    def test_tower_round_trip(self):
        bundle = hub_star_family((2, 1, 1), (3, 3))
        path = self.dir / "hub-star.json"
        save_instance(bundle, path)
        loaded = load_instance(path)
        self.assertIsNone(loaded.representation)
        self.assertEqual(loaded.levels, bundle.levels)
        self.assertEqual(loaded.ordering, bundle.ordering)

    def test_plain_graph_file(self):
        path = self.dir / "graph.json"
        write_json({"n": 3, "edges": [[0, 1], [1, 2]]}, path)
        self.assertEqual(load_instance(path).graph.edge_count, 2)

    def test_rejects_unrelated_json(self):
        path = self.dir / "other.json"
        write_json({"hello": 1}, path)
        with self.assertRaises(InstanceFormatError):
            load_instance(path)

    def test_ordering_file(self):
        path = self.dir / "order.json"
        write_json([2, 0, 1], path)
        self.assertEqual(load_ordering(path, 3).order, (2, 0, 1))
        with self.assertRaises(InstanceFormatError):
            load_ordering(path, 4)


class TestExperimentConfig(unittest.TestCase):
    def test_empty_ladder(self):
        with self.assertRaises(ConfigError):
            ExperimentConfig.from_dict({"family": "star-path", "sizes": [], "seed": 0})

    def test_unknown_field(self):
        with self.assertRaises(ConfigError):
            ExperimentConfig.from_dict({"family": "star-path", "sizes": [4], "seed": 0, "colour": "red"})

    def test_unknown_family(self):
        with self.assertRaises(ConfigError):
            ExperimentConfig.from_dict({"family": "spirals", "sizes": [4], "seed": 0})

    def test_defaults(self):
        config = ExperimentConfig.from_dict({"family": "random-box", "sizes": [20, 40], "seed": 3})
        self.assertEqual(config.r_max, 8)
        self.assertEqual(config.suites, ())

    def test_small_run(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = ExperimentConfig.from_dict({"family": "star-path", "sizes": [4, 9, 16, 25], "seed": 1,
                                                 "r_max": 3, "out": tmp, "suites": ["rel2"],
                                                 "suite_count": 5})
            report = run_experiment(config)
            self.assertEqual(len(report.outcomes), 4)
            self.assertTrue(all(outcome.error is None for outcome in report.outcomes))
            self.assertTrue(all(outcome.balanced for outcome in report.outcomes))
            self.assertIsNotNone(report.fit)
            self.assertEqual(len(report.suites), 1)
            for name in ("summary.json", "scaling.csv", "col_profiles.csv"):
                self.assertTrue((Path(tmp) / name).exists(), name)
            with open(Path(tmp) / "summary.json") as f:
                self.assertEqual(json.load(f)["family"], "star-path")


class TestCommandLine(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def generate(self, name, *flags):
        path = self.dir / f"{name}.json"
        self.assertEqual(main(["gen", *flags, "--out", str(path)]), EXIT_OK)
        return path

    def test_generation_is_reproducible(self):
        first = self.generate("a", "--family", "random-box", "--n", "30", "--seed", "7")
        second = self.generate("b", "--family", "random-box", "--n", "30", "--seed", "7")
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_graph_check(self):
        path = self.generate("star", "--family", "star-path", "--r", "2", "--t", "3")
        out = self.dir / "graph"
        self.assertEqual(main(["graph", str(path), "--check", "--out", str(out)]), EXIT_OK)
        self.assertTrue(out.with_suffix(".json").exists())

    def test_tame_check(self):
        star = self.generate("star", "--family", "star-path", "--r", "3", "--t", "3")
        self.assertEqual(main(["tame-check", str(star), "--out", str(self.dir / "t1.json")]), EXIT_OK)
        lshape = self.generate("lshape", "--family", "lshape", "--m", "4")
        self.assertEqual(main(["tame-check", str(lshape), "--out", str(self.dir / "t2.json")]), EXIT_VIOLATION)

    def test_col_with_volume_order(self):
        path = self.generate("star", "--family", "star-path", "--r", "3", "--t", "4")
        out = self.dir / "col"
        self.assertEqual(main(["col", str(path), "--r-max", "4", "--out", str(out)]), EXIT_OK)
        lines = out.with_suffix(".csv").read_text().splitlines()
        self.assertTrue(lines[0].startswith("# k'="))
        self.assertIn("r,col,argmax_vertex,bound,ok", lines)

    def test_col_on_tower(self):
        path = self.generate("tower", "--family", "hub-star", "--N", "2,1,1", "--l", "3,3")
        out = self.dir / "col"
        self.assertEqual(main(["col", str(path), "--order", "stored", "--r-max", "8", "--out", str(out)]),
                         EXIT_OK)

    def test_volume_order_needs_geometry(self):
        path = self.generate("tower", "--family", "hub-star", "--N", "3,1", "--l", "2")
        self.assertEqual(main(["col", str(path), "--out", str(self.dir / "col")]), EXIT_OPERATIONAL_ERROR)

    def test_sep(self):
        path = self.generate("star", "--family", "star-path", "--r", "2", "--t", "3")
        for method in ("exact", "bfs-layer", "ordering"):
            out = self.dir / f"sep-{method}"
            self.assertEqual(main(["sep", str(path), "--method", method, "--out", str(out)]), EXIT_OK, method)
            with open(out.with_suffix(".json")) as f:
                self.assertTrue(json.load(f)["balanced"])

    def test_dichotomy(self):
        path = self.generate("boxes", "--family", "random-box", "--n", "40", "--seed", "2")
        self.assertEqual(main(["dichotomy", str(path), "--k", "3", "--out", str(self.dir / "d.json")]), EXIT_OK)

    def test_verify_lemmas(self):
        out = self.dir / "lemmas"
        code = main(["verify-lemmas", "--suites", "rel2", "boxes", "--count", "5", "--dimensions", "1", "2",
                     "--out", str(out)])
        self.assertEqual(code, EXIT_OK)
        with open(out.with_suffix(".json")) as f:
            self.assertEqual(len(json.load(f)["suites"]), 2)

    def test_missing_instance(self):
        self.assertEqual(main(["sep", str(self.dir / "absent.json")]), EXIT_OPERATIONAL_ERROR)

    def test_experiment_command(self):
        config = self.dir / "config.json"
        write_json({"family": "random-box", "sizes": [20, 40, 80, 160], "seed": 0, "r_max": 2,
                    "params": {"d": 2}}, config)
        out = self.dir / "experiment"
        code = main(["experiment", "--config", str(config), "--out", str(out)])
        self.assertIn(code, (EXIT_OK, EXIT_VIOLATION))
        self.assertTrue((out / "summary.json").exists())


if __name__ == "__main__":
    unittest.main()
