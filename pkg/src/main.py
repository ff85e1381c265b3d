#!/usr/bin/env python3
"""
Main entry point for the tame-representation toolkit.
"""
import sys
import argparse
import logging
from pathlib import Path

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.generators.random_instances import ASPECT_PROFILES
from src.generators.registry import FAMILIES
from src.graphs.products import CONJUNCTION_MODE, PRODUCT_MODE
from src.harness.commands import COMMANDS, FORMAT_CSV, FORMAT_JSON, ORDER_VOLUME
from src.separators.scaling import METHODS
from src.separators.separators import METHOD_BFS
from src.utils.constants import EXIT_OPERATIONAL_ERROR, QUANTIFIER_ORACLE_PROBES
from src.utils.logger import set_package_level, setup_logger
from src.utils.verifier import SUITES

logger = setup_logger(__name__)


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--debug", action="store_true", help="Enable debug logging")
    parent.add_argument("--log-file", type=Path, help="Also write an uncolored log to this file")
    parent.add_argument("--seed", type=int, default=None, help="Root seed (default 0)")
    parent.add_argument("--out", help="Output file (directory for experiment)")
    parent.add_argument("--format", choices=[FORMAT_JSON, FORMAT_CSV], help="Output format")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Tame geometric representations: generators, "
                                                 "certificates, coloring numbers and separators")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options()

    gen = subparsers.add_parser("gen", parents=[common], help="Generate an instance file")
    gen.add_argument("--family", required=True, choices=sorted(FAMILIES))
    gen.add_argument("--m", type=int, help="Side size (narrow-rectangles, wedge, lshape)")
    gen.add_argument("--thickness", help="Rectangle thickness as p/q (narrow-rectangles)")
    gen.add_argument("--r", type=int, help="Star size (star-path)")
    gen.add_argument("--t", type=int, help="Path length (star-path)")
    gen.add_argument("--N", help="Comma-separated level sizes (hub-star)")
    gen.add_argument("--l", help="Comma-separated path lengths (hub-star)")
    gen.add_argument("--h-max", type=int, dest="h_max", help="Number of scales (sstar)")
    gen.add_argument("--n", type=int, help="Number of shapes (sstar, random-box)")
    gen.add_argument("--c", type=int, help="Thinness target (sstar)")
    gen.add_argument("--d", type=int, help="Dimension (random-box)")
    gen.add_argument("--aspect-profile", dest="aspect_profile", choices=ASPECT_PROFILES)
    gen.add_argument("--density", type=float, help="Total volume over container volume (random-box)")
    gen.add_argument("--thin-cap", type=int, dest="thin_cap", help="Reject placements above this depth")

    graph = subparsers.add_parser("graph", parents=[common], help="Rebuild and check an intersection graph")
    graph.add_argument("instance", type=Path)
    graph.add_argument("--product", type=Path, help="Second instance to combine with")
    graph.add_argument("--mode", choices=[PRODUCT_MODE, CONJUNCTION_MODE], default=PRODUCT_MODE)
    graph.add_argument("--check", action="store_true", help="Compare against the pairwise oracle")

    tame = subparsers.add_parser("tame-check", parents=[common], help="Certify (c, s)-tameness")
    tame.add_argument("instance", type=Path)
    tame.add_argument("--c", type=int, help="Thinness bound (default: the measured value)")
    tame.add_argument("--s", help="Comparability parameter as p/q (default: the recorded s*)")

    col = subparsers.add_parser("col", parents=[common], help="Weak coloring profile with its bound")
    col.add_argument("instance", type=Path)
    col.add_argument("--order", default=ORDER_VOLUME,
                     help="'volume', 'stored', or a JSON file with a vertex ordering")
    col.add_argument("--r-max", type=int, dest="r_max", default=8)
    col.add_argument("--c", type=int, help="Thinness used in the bound (default: measured)")
    col.add_argument("--s", help="Comparability used in the bound (default: recorded s*)")

    sep = subparsers.add_parser("sep", parents=[common], help="Balanced separator")
    sep.add_argument("instance", type=Path)
    sep.add_argument("--method", choices=METHODS, default=METHOD_BFS)
    sep.add_argument("--r", type=int, default=4, help="Radius for the ordering method")

    dichotomy = subparsers.add_parser("dichotomy", parents=[common], help="Disjoint or stabbed boxes")
    dichotomy.add_argument("instance", type=Path)
    dichotomy.add_argument("--k", type=int, required=True)

    experiment = subparsers.add_parser("experiment", parents=[common], help="Run an experiment config")
    experiment.add_argument("--config", type=Path, required=True)

    lemmas = subparsers.add_parser("verify-lemmas", parents=[common], help="Run the property suites")
    lemmas.add_argument("--suites", nargs="+", choices=SUITES, help="Suites to run (default: all)")
    lemmas.add_argument("--count", type=int, default=100, help="Cases per suite and dimension")
    lemmas.add_argument("--dimensions", type=int, nargs="+", default=[1, 2, 3])
    lemmas.add_argument("--probes", type=int, default=QUANTIFIER_ORACLE_PROBES)
    return parser


def main(argv=None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    # Update logging level based on verbosity
    set_package_level(logging.DEBUG if args.debug else logging.INFO, args.log_file)
    args.seed_given = args.seed is not None
    if not args.seed_given:
        args.seed = 0

    logger.separator()
    logger.info(f"Running {args.command}")
    try:
        return COMMANDS[args.command](args)
    except FileNotFoundError as e:
        logger.error(f"File not found: {str(e)}")
    except ValueError as e:
        logger.error(f"Invalid input: {str(e)}")
    except ArithmeticError as e:
        logger.error(f"Numeric failure: {str(e)}")
    except Exception:
        logger.exception(f"Unexpected error in {args.command}")
    return EXIT_OPERATIONAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
