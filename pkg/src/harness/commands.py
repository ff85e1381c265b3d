"""
One function per CLI subcommand.

Each command takes the parsed argparse namespace and returns an exit code:
EXIT_OK on success, EXIT_VIOLATION when a certificate or bound check
fails. Operational errors propagate as exceptions and are mapped to
EXIT_OPERATIONAL_ERROR by main().
"""
from argparse import Namespace
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.coloring.reach import verify_hub_star_pattern, volume_ordering
from src.generators.bundle import InstanceBundle
from src.generators.registry import build_family
from src.graphs.dichotomy import boxes_dichotomy, verify_dichotomy
from src.graphs.intersection import build_intersection_graph, pairwise_intersection_graph
from src.graphs.products import product_representation
from src.graphs.tameness import check_tame
from src.harness.experiment import ExperimentConfig, coloring_table, run_experiment
from src.models.graph import Representation
from src.models.ordering import Ordering
from src.models.results import CertificateStatus
from src.models.shapes import Box
from src.separators.scaling import find_separator
from src.separators.separators import verify_separator
from src.utils.constants import EXIT_OK, EXIT_VIOLATION
from src.utils.errors import InvalidParameterError, PreconditionError
from src.utils.io_handler import load_instance, load_ordering, save_instance, write_csv, write_json
from src.utils.logger import setup_logger
from src.utils.verifier import SUITES, run_suites

logger = setup_logger(__name__)

FORMAT_JSON = "json"
FORMAT_CSV = "csv"
ORDER_VOLUME = "volume"
ORDER_STORED = "stored"

# Generator flags, as argparse destinations, and the parameter names they fill
GENERATOR_FLAGS = {
    "m": "m", "thickness": "thickness", "r": "r", "t": "t", "N": "N", "l": "l",
    "h_max": "h_max", "n": "n", "c": "c", "d": "d", "aspect_profile": "aspect_profile",
    "density": "density", "thin_cap": "thin_cap",
}


def _output_path(args: Namespace, default: str) -> Path:
    return Path(args.out) if args.out else Path("output") / default


def _emit(data: Dict[str, Any], rows: List[Dict[str, Any]], columns: Sequence[str], path: Path,
          fmt: str, header: Optional[Sequence[str]] = None) -> None:
    """Write the JSON document or the CSV table, whichever the format asks for."""
    if fmt == FORMAT_CSV:
        write_csv(rows, path.with_suffix(".csv"), columns, header)
    else:
        write_json(data, path.with_suffix(".json"))


def _require_representation(bundle: InstanceBundle, what: str) -> Representation:
    if bundle.representation is None:
        raise PreconditionError(f"{what} needs a geometric instance, the file holds only a graph")
    return bundle.representation


def generator_params(args: Namespace) -> Dict[str, Any]:
    """The generator flags that were given on the command line."""
    params = {}
    for dest, name in GENERATOR_FLAGS.items():
        value = getattr(args, dest, None)
        if value is not None:
            params[name] = value
    return params


def cmd_gen(args: Namespace) -> int:
    bundle = build_family(args.family, generator_params(args), args.seed)
    path = _output_path(args, f"{args.family}-seed{args.seed}.json")
    save_instance(bundle, path)
    s_star = bundle.s_star if bundle.s_star is not None else bundle.expected_s
    logger.info(f"{args.family}: n={bundle.n}, d={bundle.dimension}, measured c={bundle.measured_c}, "
                f"s*={s_star}")
    logger.info(f"Instance written to {path}")
    return EXIT_OK


def cmd_graph(args: Namespace) -> int:
    """
    Rebuild the intersection graph of an instance (or of its product with a
    second instance) and cross-check it against the stored graph and the
    pairwise oracle.
    """
    bundle = load_instance(args.instance)
    representation = _require_representation(bundle, "graph")
    stored = bundle.graph
    if args.product:
        other = _require_representation(load_instance(args.product), "graph --product")
        representation = product_representation(representation, other, args.mode)
        stored = None
    graph = build_intersection_graph(representation)

    status = EXIT_OK
    if stored is not None and graph != stored:
        logger.error("✗ Rebuilt intersection graph differs from the stored graph")
        status = EXIT_VIOLATION
    if args.check:
        if graph != pairwise_intersection_graph(representation):
            logger.error("✗ Sweep and pairwise intersection graphs differ")
            status = EXIT_VIOLATION
        else:
            logger.info("✓ Sweep graph matches the pairwise oracle")

    data = dict(graph.to_dict(), edge_count=graph.edge_count, bipartite=graph.is_bipartite(),
                dimension=representation.dimension)
    rows = [{"u": u, "v": v} for u, v in graph.edges()]
    path = _output_path(args, "graph.json")
    _emit(data, rows, ["u", "v"], path, args.format or FORMAT_JSON)
    logger.info(f"Graph: n={graph.n}, {graph.edge_count} edges, written to {path}")
    return status


def cmd_tame_check(args: Namespace) -> int:
    bundle = load_instance(args.instance)
    representation = _require_representation(bundle, "tame-check")
    c = args.c if args.c is not None else (bundle.measured_c or 1)
    s = args.s if args.s is not None else (bundle.s_star or bundle.expected_s or 1)
    certificate = check_tame(representation, c, s, args.seed)
    path = _output_path(args, "tame-check.json")
    write_json(certificate.to_dict(), path)

    if certificate.status is CertificateStatus.SAMPLED_ONLY:
        logger.warning(f"Certificate is sampled only: {len(certificate.undecided_pairs)} undecided pairs")
    if certificate.passed:
        logger.info(f"✓ ({c}, s={s})-tame: measured c={certificate.measured_c}, s*={certificate.s_star}")
        return EXIT_OK
    logger.error(f"✗ Not ({c}, s={s})-tame: {certificate.witness}")
    return EXIT_VIOLATION


def _ordering_for(bundle: InstanceBundle, order: str) -> Ordering:
    if order == ORDER_VOLUME:
        return volume_ordering(_require_representation(bundle, "volume order"))
    if order == ORDER_STORED:
        if bundle.ordering is None:
            raise PreconditionError("The instance has no stored ordering")
        return bundle.ordering
    return load_ordering(order, bundle.n)


def cmd_col(args: Namespace) -> int:
    """
    Weak coloring profile under the chosen order, with the bound column.
    Tower instances under their stored order are also checked against the
    per-level reach pattern.
    """
    bundle = load_instance(args.instance)
    ordering = _ordering_for(bundle, args.order)
    table = coloring_table(bundle, ordering, args.r_max, args.c, args.s)
    rows = table.rows()
    violations = table.violations
    if table.constants is None:
        logger.warning(table.header()[0])

    pattern = []
    if bundle.levels and args.order == ORDER_STORED:
        for r in range(1, args.r_max + 1):
            pattern.extend({"r": r, "vertex": v, "reach": size, "bound": bound}
                           for v, size, bound in verify_hub_star_pattern(bundle.graph, ordering, bundle.levels, r))
        violations += len(pattern)

    path = _output_path(args, "col.csv")
    data = {"header": table.header(), "rows": rows, "pattern_violations": pattern}
    _emit(data, rows, ["r", "col", "argmax_vertex", "bound", "ok"], path, args.format or FORMAT_CSV,
          header=table.header())
    for row in rows:
        logger.debug(f"r={row['r']}: col={row['col']} (vertex {row['argmax_vertex']}), bound {row['bound']}")
    if violations:
        logger.error(f"✗ {violations} coloring bound violations")
        return EXIT_VIOLATION
    logger.info(f"✓ col profile up to r={args.r_max} within bounds, written to {path}")
    return EXIT_OK


def cmd_sep(args: Namespace) -> int:
    bundle = load_instance(args.instance)
    result = find_separator(bundle, args.method, args.r)
    verified = verify_separator(bundle.graph, result)
    data = dict(result.to_dict(), verified=verified)
    path = _output_path(args, "separator.json")
    _emit(data, [data], ["method", "n", "size", "balance_ratio", "balanced", "verified"], path,
          args.format or FORMAT_JSON)
    if not (result.balanced and verified):
        logger.error(f"✗ {args.method} separator of size {result.size} is not a verified balanced separator")
        return EXIT_VIOLATION
    logger.info(f"✓ {args.method} separator of size {result.size}, largest component "
                f"{result.largest}/{result.n}")
    return EXIT_OK


def cmd_dichotomy(args: Namespace) -> int:
    bundle = load_instance(args.instance)
    representation = _require_representation(bundle, "dichotomy")
    boxes = [placed.region for placed in representation.placements]
    if not all(isinstance(box, Box) for box in boxes):
        raise InvalidParameterError("dichotomy works on box instances only")
    result = boxes_dichotomy(boxes, args.k)
    verified = verify_dichotomy(boxes, args.k, result)
    path = _output_path(args, "dichotomy.json")
    write_json(dict(result.to_dict(), k=args.k, verified=verified), path)
    if not verified:
        logger.error(f"✗ Branch {result.branch} certificate failed re-verification")
        return EXIT_VIOLATION
    logger.info(f"✓ Branch {result.branch} with {len(result.indices)} boxes")
    return EXIT_OK


def cmd_experiment(args: Namespace) -> int:
    config = ExperimentConfig.load(args.config)
    overrides = {}
    if args.out:
        overrides["out"] = args.out
    if args.seed_given:
        overrides["seed"] = args.seed
    if overrides:
        config = replace(config, **overrides)
    report = run_experiment(config)
    failed = [o for o in report.outcomes if o.error is not None]
    if failed:
        logger.warning(f"{len(failed)} of {len(report.outcomes)} instances failed")
    if report.violations:
        logger.error(f"✗ {report.violations} violations, see {config.out_dir}")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_verify_lemmas(args: Namespace) -> int:
    names = args.suites or list(SUITES)
    results = run_suites(names, args.count, tuple(args.dimensions), args.seed, args.probes)
    path = _output_path(args, "verify-lemmas.json")
    data = {"seed": args.seed, "count": args.count, "suites": [r.to_dict() for r in results]}
    _emit(data, [r.to_dict() for r in results], ["suite", "passed", "violations", "skipped"], path,
          args.format or FORMAT_JSON)
    return EXIT_OK if all(r.ok for r in results) else EXIT_VIOLATION


COMMANDS = {
    "gen": cmd_gen,
    "graph": cmd_graph,
    "tame-check": cmd_tame_check,
    "col": cmd_col,
    "sep": cmd_sep,
    "dichotomy": cmd_dichotomy,
    "experiment": cmd_experiment,
    "verify-lemmas": cmd_verify_lemmas,
}
