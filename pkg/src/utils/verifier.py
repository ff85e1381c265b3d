"""
Property suites for the relation implications, the box dichotomy, the
interval counting bound and the envelope guarantees.

Each suite draws seeded random inputs, checks one property on each and
counts passes, violations and skipped (premise-unmet) cases.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Sequence

import numpy as np

from src.geometry.envelope import check_envelope_quality, envelope, inscribed_ball_bound
from src.geometry.measures import height, volume
from src.generators.random_instances import interval_family_pair, random_box_family
from src.graphs.dichotomy import boxes_dichotomy, verify_dichotomy
from src.models.results import CombipStatus
from src.models.shapes import Box, ConvexPolytope
from src.relations.comparability import required_s, sqsubseteq_oracle, sqsubseteq_s
from src.relations.lemmas import combip_check, verify_cmp, verify_rel1, verify_rel2
from src.utils.constants import EPS, QUANTIFIER_ORACLE_GRID, QUANTIFIER_ORACLE_PROBES
from src.utils.errors import DegenerateShapeError, InvalidParameterError, PreconditionError
from src.utils.logger import setup_logger
from src.utils.seeds import derive_seed

logger = setup_logger(__name__)

# Box extents are multiples of 1/4 in [1/4, 4]
EXTENT_STEPS = 16
EXTENT_UNIT = Fraction(1, 4)
# Oracle comparisons are skipped when s is this close to the required value
DECISION_MARGIN = 1e-6
SUITES = ("rel1", "rel2", "cmp", "closed-form", "boxes", "combip", "envelope")


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    violations: int = 0
    skipped: int = 0
    witnesses: List = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.passed + self.violations + self.skipped

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def record(self, outcome: bool, witness=None) -> None:
        if outcome:
            self.passed += 1
            return
        self.violations += 1
        if len(self.witnesses) < 10:
            self.witnesses.append(witness)

    def to_dict(self) -> Dict:
        return {"suite": self.name, "passed": self.passed, "violations": self.violations,
                "skipped": self.skipped, "witnesses": self.witnesses}


def random_box(rng: np.random.Generator, dimension: int) -> Box:
    extents = [EXTENT_UNIT * int(x) for x in rng.integers(1, EXTENT_STEPS + 1, size=dimension)]
    return Box.from_extents(extents)


def random_scale(rng: np.random.Generator) -> Fraction:
    """A factor in [1, 4] with denominator 4."""
    return Fraction(int(rng.integers(4, 17)), 4)


def _pairs(count: int, dimension: int, seed: int, stage: str):
    rng = np.random.default_rng(derive_seed(seed, dimension, stage))
    for _ in range(count):
        yield rng, random_box(rng, dimension), random_box(rng, dimension)


def _describe(*boxes: Box) -> List:
    return [[str(x) for x in box.extents] for box in boxes]


def verify_rel1_suite(count: int, dimensions: Sequence[int], seed: int = 0) -> SuiteResult:
    result = SuiteResult("rel1")
    for dimension in dimensions:
        for rng, first, second in _pairs(count, dimension, seed, "rel1"):
            k, s = random_scale(rng), random_scale(rng)
            result.record(verify_rel1(first, second, k, s), _describe(first, second) + [str(k), str(s)])
    return result


def verify_rel2_suite(count: int, dimensions: Sequence[int], seed: int = 0) -> SuiteResult:
    result = SuiteResult("rel2")
    for dimension in dimensions:
        for rng, first, second in _pairs(count, dimension, seed, "rel2"):
            s = random_scale(rng)
            result.record(verify_rel2(first, second, s), _describe(first, second) + [str(s)])
    return result


def verify_cmp_suite(count: int, dimensions: Sequence[int], seed: int = 0) -> SuiteResult:
    """Pairs ordered by volume and tested at the least s making them comparable."""
    result = SuiteResult("cmp")
    for dimension in dimensions:
        for _, first, second in _pairs(count, dimension, seed, "cmp"):
            if volume(first) > volume(second):
                first, second = second, first
            s = min(required_s(first, second)[0], required_s(second, first)[0])
            try:
                result.record(verify_cmp(first, second, s), _describe(first, second) + [str(s)])
            except PreconditionError as e:
                logger.debug(f"cmp: skipped, {e}")
                result.skipped += 1
    return result


def closed_form_suite(count: int, dimensions: Sequence[int], seed: int = 0,
                      probes: int = QUANTIFIER_ORACLE_PROBES, grid: int = QUANTIFIER_ORACLE_GRID) -> SuiteResult:
    """The exact ⊑_s verdict against the sampling oracle, away from the decision boundary."""
    result = SuiteResult("closed-form")
    for dimension in dimensions:
        for index, (rng, first, second) in enumerate(_pairs(count, dimension, seed, "closed-form")):
            s = random_scale(rng)
            needed = float(required_s(first, second)[0])
            if abs(needed - float(s)) <= DECISION_MARGIN * float(s):
                result.skipped += 1
                continue
            exact = sqsubseteq_s(first, second, s)
            sampled = sqsubseteq_oracle(first, second, s, probes, grid, derive_seed(seed, index, "oracle"))
            result.record(exact.verdict == sampled.verdict, _describe(first, second) + [str(s)])
    return result


def boxes_dichotomy_suite(count: int, dimensions: Sequence[int], seed: int = 0, max_n: int = 200,
                          max_k: int = 4) -> SuiteResult:
    result = SuiteResult("boxes")
    rng = np.random.default_rng(derive_seed(seed, 0, "boxes"))
    for index in range(count):
        dimension = int(rng.choice(dimensions))
        n = int(rng.integers(1, max_n + 1))
        k = int(rng.integers(1, max_k + 1))
        boxes = random_box_family(n, dimension, derive_seed(seed, index, "boxes-family"))
        certificate = boxes_dichotomy(boxes, k)
        result.record(verify_dichotomy(boxes, k, certificate), {"n": n, "d": dimension, "k": k})
    return result


def combip_suite(count: int, seed: int = 0, max_s_prime: int = 4) -> SuiteResult:
    result = SuiteResult("combip")
    for index in range(count):
        s_prime = 1 + index % max_s_prime
        first, second, l = interval_family_pair(derive_seed(seed, index, "combip"), s_prime)
        outcome = combip_check(first, second, l, s_prime)
        if outcome.status is CombipStatus.PREMISE_UNMET:
            result.skipped += 1
            continue
        result.record(outcome.status is CombipStatus.HOLDS,
                      {"size_u": outcome.size_u, "size_v": outcome.size_v, "l": l, "s_prime": s_prime})
    return result


def random_polytope(rng: np.random.Generator, dimension: int, points: int = 12) -> ConvexPolytope:
    """Hull of random points, stretched along one random direction."""
    cloud = rng.normal(size=(points, dimension))
    direction = rng.normal(size=dimension)
    stretch = np.eye(dimension) + rng.uniform(0, 3) * np.outer(direction, direction)
    return ConvexPolytope.from_points(cloud @ stretch)


def envelope_suite(count_planar: int, count_spatial: int, seed: int = 0) -> SuiteResult:
    """Shrunk envelopes fit inside the shape; inscribed balls reach height / d."""
    result = SuiteResult("envelope")
    rng = np.random.default_rng(derive_seed(seed, 0, "envelope"))
    for dimension, count in ((2, count_planar), (3, count_spatial)):
        for _ in range(count):
            try:
                shape = random_polytope(rng, dimension)
            except DegenerateShapeError:
                result.skipped += 1
                continue
            try:
                quality = check_envelope_quality(shape, envelope(shape))
            except DegenerateShapeError:
                quality = False
            ball = inscribed_ball_bound(shape) >= height(shape) / dimension - EPS * max(1.0, height(shape))
            result.record(quality and ball, {"d": dimension, "vertices": [list(v) for v in shape.vertices]})
    return result


def run_suites(names: Sequence[str], count: int, dimensions: Sequence[int] = (1, 2, 3),
               seed: int = 0, probes: int = QUANTIFIER_ORACLE_PROBES) -> List[SuiteResult]:
    """
    Run the named suites with `count` cases each (per dimension where it applies).

    Raises:
        InvalidParameterError: For an unknown suite name
    """
    runners: Dict[str, Callable[[], SuiteResult]] = {
        "rel1": lambda: verify_rel1_suite(count, dimensions, seed),
        "rel2": lambda: verify_rel2_suite(count, dimensions, seed),
        "cmp": lambda: verify_cmp_suite(count, dimensions, seed),
        "closed-form": lambda: closed_form_suite(count, dimensions, seed, probes),
        "boxes": lambda: boxes_dichotomy_suite(count, dimensions, seed),
        "combip": lambda: combip_suite(count, seed),
        "envelope": lambda: envelope_suite(count, max(1, count // 2), seed),
    }
    unknown = [name for name in names if name not in runners]
    if unknown:
        raise InvalidParameterError(f"Unknown suites {unknown}, use any of {list(SUITES)}")

    results = []
    for name in names:
        logger.separator()
        logger.info(f"Running suite {name}...")
        outcome = runners[name]()
        if outcome.ok:
            logger.info(f"✓ {name}: {outcome.passed} passed, {outcome.skipped} skipped")
        else:
            logger.error(f"✗ {name}: {outcome.violations} violations "
                         f"({outcome.passed} passed, {outcome.skipped} skipped)")
            for witness in outcome.witnesses:
                logger.debug(f"{name} witness: {witness}")
        results.append(outcome)
    logger.separator()
    total = sum(r.violations for r in results)
    logger.info(f"Lemma suites complete: {len(results) - sum(1 for r in results if not r.ok)}/{len(results)} "
                f"suites without violations, {total} violations in total")
    return results
