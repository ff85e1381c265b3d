"""
Experiment configuration and the full per-size pipeline: generate, color,
separate, fit, and run the property suites.
"""
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from src.coloring.reach import col_profile, growth_slope, theorem_constants, volume_ordering
from src.generators.bundle import InstanceBundle
from src.generators.registry import FAMILIES, build_family, sized_params
from src.models.ordering import ColoringProfile, Ordering
from src.relations.comparability import comparability_scan
from src.separators.scaling import METHODS, ScalingFit, calibrated_bound_check, find_separator, fit_exponent
from src.separators.separators import METHOD_BFS, verify_separator
from src.utils.constants import THREADS_ENV_VAR
from src.utils.errors import ConfigError, ToolkitError
from src.utils.io_handler import read_json, write_csv, write_json
from src.utils.logger import setup_logger
from src.utils.seeds import derive_seed
from src.utils.verifier import SUITES, run_suites

logger = setup_logger(__name__)


@dataclass(frozen=True)
class ExperimentConfig:
    family: str
    sizes: Tuple[int, ...]
    seed: int
    params: Dict[str, Any] = field(default_factory=dict)
    method: str = METHOD_BFS
    r_max: int = 8
    r: int = 4
    out: str = "output"
    suites: Tuple[str, ...] = ()
    suite_count: int = 100

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        """
        Raises:
            ConfigError: On missing or invalid fields
        """
        if not isinstance(data, dict):
            raise ConfigError("An experiment config must be a JSON object")
        for name in ("family", "sizes", "seed"):
            if name not in data:
                raise ConfigError(f"Config is missing {name!r}")
        unknown = set(data) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ConfigError(f"Unknown config fields {sorted(unknown)}")
        try:
            config = cls(
                family=str(data["family"]),
                sizes=tuple(int(size) for size in data["sizes"]),
                seed=int(data["seed"]),
                params=dict(data.get("params", {})),
                method=str(data.get("method", METHOD_BFS)),
                r_max=int(data.get("r_max", 8)),
                r=int(data.get("r", 4)),
                out=str(data.get("out", "output")),
                suites=tuple(data.get("suites", ())),
                suite_count=int(data.get("suite_count", 100)),
            )
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid config value: {e}")
        config.validate()
        return config

    @classmethod
    def load(cls, file_path) -> "ExperimentConfig":
        return cls.from_dict(read_json(file_path))

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ConfigError(f"Unknown family {self.family!r}, use one of {sorted(FAMILIES)}")
        if not self.sizes:
            raise ConfigError("The size ladder is empty")
        if any(size < 1 for size in self.sizes):
            raise ConfigError(f"Sizes must be positive, got {list(self.sizes)}")
        if self.method not in METHODS:
            raise ConfigError(f"Unknown separator method {self.method!r}, use one of {list(METHODS)}")
        if self.r_max < 0 or self.r < 1 or self.suite_count < 1:
            raise ConfigError("r_max must be >= 0, r and suite_count >= 1")
        unknown = [name for name in self.suites if name not in SUITES]
        if unknown:
            raise ConfigError(f"Unknown suites {unknown}, use any of {list(SUITES)}")

    @property
    def out_dir(self) -> Path:
        return Path(self.out)


def thread_count() -> int:
    """Worker threads from the environment, at least 1."""
    value = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        return max(1, int(value))
    except ValueError:
        raise ConfigError(f"{THREADS_ENV_VAR} must be an integer, got {value!r}")


def comparability_parameter(bundle: InstanceBundle):
    """s* of the instance: recorded, promised, or measured over its distinct shapes."""
    if bundle.s_star is not None:
        return bundle.s_star
    if bundle.expected_s is not None:
        return bundle.expected_s
    if bundle.representation is None:
        return None
    return comparability_scan([placed.shape for placed in bundle.representation.placements], 1).s_star


@dataclass(frozen=True)
class ColoringTable:
    profile: ColoringProfile
    constants: Optional[Tuple[Fraction, Fraction, Fraction]]
    dimension: Optional[int]

    def bound(self, r: int) -> Optional[Fraction]:
        if self.constants is None:
            return None
        return self.constants[2] * r ** self.dimension

    def rows(self) -> List[Dict[str, Any]]:
        rows = []
        for row in self.profile.to_rows():
            bound = self.bound(row["r"])
            rows.append(dict(row, bound=bound, ok=None if bound is None else row["col"] <= bound))
        return rows

    @property
    def violations(self) -> int:
        return sum(1 for row in self.rows() if row["ok"] is False)

    def header(self) -> List[str]:
        if self.constants is None:
            return ["no geometric bound: missing representation or comparability parameter"]
        k_prime, s_prime, delta = self.constants
        return [f"k'={k_prime}", f"s'={s_prime}", f"delta={delta}", f"d={self.dimension}"]


def coloring_table(bundle: InstanceBundle, ordering: Ordering, r_max: int, c=None, s=None) -> ColoringTable:
    """
    col profile with the bound delta r^d, constants composed from the
    measured (or given) c and s.
    """
    profile = col_profile(bundle.graph, ordering, r_max)
    c = bundle.measured_c if c is None else c
    s = comparability_parameter(bundle) if s is None else s
    if s is not None and math.isinf(float(s)):
        logger.warning("No finite comparability parameter was found; the table has no geometric bound")
        s = None
    constants = None
    if bundle.representation is not None and c is not None and s is not None:
        constants = theorem_constants(max(1, c), max(Fraction(1), Fraction(s)), bundle.dimension)
    return ColoringTable(profile, constants, bundle.dimension)


@dataclass
class InstanceOutcome:
    index: int
    size: int
    n: int = 0
    dimension: Optional[int] = None
    separator_size: Optional[int] = None
    balanced: bool = True
    coloring: Optional[ColoringTable] = None
    slope: Optional[float] = None
    error: Optional[str] = None


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    outcomes: List[InstanceOutcome]
    fit: Optional[ScalingFit]
    calibration: List[Dict[str, Any]]
    suites: List

    @property
    def violations(self) -> int:
        count = sum(outcome.coloring.violations for outcome in self.outcomes if outcome.coloring)
        count += sum(1 for outcome in self.outcomes if not outcome.balanced)
        count += sum(1 for row in self.calibration if not row["ok"])
        count += sum(suite.violations for suite in self.suites)
        return count

    def summary(self) -> Dict[str, Any]:
        return {
            "family": self.config.family,
            "params": self.config.params,
            "seed": self.config.seed,
            "method": self.config.method,
            "scaling": None if self.fit is None else self.fit.to_dict(),
            "instances": [{"index": o.index, "size": o.size, "n": o.n, "separator_size": o.separator_size,
                           "balanced": o.balanced, "col_slope": o.slope, "error": o.error}
                          for o in self.outcomes],
            "suites": [suite.to_dict() for suite in self.suites],
            "violations": self.violations,
        }


def _run_instance(config: ExperimentConfig, index: int, size: int) -> InstanceOutcome:
    outcome = InstanceOutcome(index, size)
    try:
        params = sized_params(config.family, config.params, size)
        bundle = build_family(config.family, params, derive_seed(config.seed, index, "generate"))
        outcome.n, outcome.dimension = bundle.n, bundle.dimension
        result = find_separator(bundle, config.method, config.r)
        outcome.separator_size = result.size
        outcome.balanced = result.balanced and verify_separator(bundle.graph, result)
        if config.r_max > 0:
            ordering = bundle.ordering
            if ordering is None and bundle.representation is not None:
                ordering = volume_ordering(bundle.representation)
            if ordering is not None:
                outcome.coloring = coloring_table(bundle, ordering, config.r_max)
                if config.r_max >= 2:
                    outcome.slope = growth_slope(outcome.coloring.profile)
        logger.info(f"{config.family} size {size}: n={outcome.n}, separator {outcome.separator_size}, "
                    f"col slope {outcome.slope}")
    except (ToolkitError, ArithmeticError) as e:
        outcome.error = f"{type(e).__name__}: {e}"
        logger.error(f"{config.family} size {size} failed: {outcome.error}")
    return outcome


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """
    Run every size of the ladder (concurrently when TAME_THREADS > 1), fit
    the separator exponent, run the configured suites and write the report
    files into the output directory.
    """
    config.validate()
    logger.separator()
    logger.info(f"Experiment {config.family}: sizes {list(config.sizes)}, method {config.method}")
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        futures = [pool.submit(_run_instance, config, index, size) for index, size in enumerate(config.sizes)]
        outcomes = [future.result() for future in futures]

    points = [(o.n, o.separator_size) for o in outcomes if o.error is None and o.separator_size is not None]
    fit, calibration = None, []
    if len({n for n, _ in points}) >= 2:
        exponent, beta = fit_exponent(points)
        dimensions = [o.dimension for o in outcomes if o.dimension is not None]
        dimension = dimensions[0] if dimensions else int(config.params.get("d", 2))
        fit = ScalingFit(config.family, dimension, config.method, tuple(points), exponent, beta)
        calibration = calibrated_bound_check(fit)
        logger.info(f"Fitted exponent {exponent:.4f} (target {fit.exponent_target:.4f}), "
                    f"conclusive: {fit.conclusive}")
    suites = run_suites(config.suites, config.suite_count, seed=config.seed) if config.suites else []
    report = ExperimentReport(config, outcomes, fit, calibration, suites)
    write_report(report)
    return report


def write_report(report: ExperimentReport) -> None:
    out = report.config.out_dir
    write_json(report.summary(), out / "summary.json")
    write_csv([dict(row, method=report.config.method) for row in report.calibration], out / "scaling.csv",
              ["n", "size", "bound", "method", "ok"],
              header=[f"method={report.config.method}"] if report.fit is None else
              [f"method={report.config.method}", f"exponent_target={report.fit.exponent_target}",
               f"exponent_fit={report.fit.exponent_fit}", f"beta_fit={report.fit.beta_fit}"])
    rows = []
    for outcome in report.outcomes:
        if outcome.coloring is None:
            continue
        for row in outcome.coloring.rows():
            rows.append(dict(row, size=outcome.size, n=outcome.n))
    write_csv(rows, out / "col_profiles.csv", ["size", "n", "r", "col", "argmax_vertex", "bound", "ok"])
    logger.info(f"Report written to {out}")
