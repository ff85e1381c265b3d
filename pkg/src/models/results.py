"""
Result values produced by the comparability relations.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple, Union

from src.utils.errors import InvalidParameterError
from src.utils.validators import to_scalar

Scalar = Union[Fraction, float]


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TriBool:
    """
    Three-valued answer of a relation query.

    `exact` is True when the verdict came from rational arithmetic; float
    backend answers carry `exact=False` even when they are decisive.
    """
    verdict: Verdict
    witness: Optional[Tuple] = None
    exact: bool = True

    @classmethod
    def holding(cls, exact: bool = True) -> "TriBool":
        return cls(Verdict.HOLDS, None, exact)

    @classmethod
    def failing(cls, witness: Optional[Sequence] = None, exact: bool = True) -> "TriBool":
        return cls(Verdict.FAILS, None if witness is None else tuple(witness), exact)

    @classmethod
    def unknown(cls, witness: Optional[Sequence] = None) -> "TriBool":
        return cls(Verdict.UNKNOWN, None if witness is None else tuple(witness), False)

    @property
    def held(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.FAILS

    @property
    def undecided(self) -> bool:
        return self.verdict is Verdict.UNKNOWN


@dataclass(frozen=True)
class ComparabilityReport:
    """Both directions of the sqsubseteq_s query for one pair of shapes."""
    pair: Tuple[int, int]
    s: Scalar
    forward: TriBool
    backward: TriBool
    required_forward: Optional[Scalar] = None
    required_backward: Optional[Scalar] = None
    relation: str = "sqsubseteq"

    @property
    def direction(self) -> str:
        """One of "forward", "backward", "both", "neither" or "unknown"."""
        if self.forward.held and self.backward.held:
            return "both"
        if self.forward.held:
            return "forward"
        if self.backward.held:
            return "backward"
        if self.forward.undecided or self.backward.undecided:
            return "unknown"
        return "neither"

    @property
    def comparable(self) -> bool:
        return self.direction in ("forward", "backward", "both")

    @property
    def witness(self) -> Optional[Tuple]:
        if self.comparable:
            return None
        return self.forward.witness or self.backward.witness

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair": list(self.pair),
            "relation": self.relation,
            "k": None,
            "s": self.s,
            "verdict": self.direction,
            "forward": self.forward.verdict.value,
            "backward": self.backward.verdict.value,
            "required_s": [self.required_forward, self.required_backward],
            "witness": None if self.witness is None else list(self.witness),
        }


@dataclass(frozen=True)
class ComparabilityScan:
    """
    Pairwise reports over the distinct shapes of a family.

    `shape_index[i]` is the position among the distinct shapes of the i-th
    input shape; `s_star` is the least s making every pair comparable.
    """
    reports: Tuple[ComparabilityReport, ...]
    shape_index: Tuple[int, ...]
    s_star: Scalar
    exact: bool

    @property
    def all_comparable(self) -> bool:
        return all(report.comparable for report in self.reports)

    @property
    def undecided(self) -> Tuple[ComparabilityReport, ...]:
        return tuple(r for r in self.reports if r.direction == "unknown")

    @property
    def incomparable(self) -> Tuple[ComparabilityReport, ...]:
        return tuple(r for r in self.reports if r.direction == "neither")


@dataclass(frozen=True)
class IntervalFamily:
    """
    Closed intervals [a - b, a + b] given by centers a and half-lengths b > 0.
    """
    centers: Tuple[Fraction, ...]
    halves: Tuple[Fraction, ...]

    def __post_init__(self):
        centers = tuple(to_scalar(a) for a in self.centers)
        halves = tuple(to_scalar(b) for b in self.halves)
        if len(centers) != len(halves):
            raise InvalidParameterError("Interval family needs one half-length per center")
        for index, half in enumerate(halves):
            if half <= 0:
                raise InvalidParameterError(f"Interval {index} has non-positive half-length {half}")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "halves", halves)

    @classmethod
    def from_endpoints(cls, intervals: Sequence[Tuple]) -> "IntervalFamily":
        pairs = [(to_scalar(lo), to_scalar(hi)) for lo, hi in intervals]
        return cls(tuple((lo + hi) / 2 for lo, hi in pairs), tuple((hi - lo) / 2 for lo, hi in pairs))

    def __len__(self) -> int:
        return len(self.centers)

    def interval(self, index: int) -> Tuple[Fraction, Fraction]:
        return self.centers[index] - self.halves[index], self.centers[index] + self.halves[index]

    def length(self, index: int) -> Fraction:
        return 2 * self.halves[index]

    def scaled(self, index: int, factor) -> Tuple[Fraction, Fraction]:
        """The interval scaled by factor about its own center."""
        factor = to_scalar(factor)
        return (self.centers[index] - factor * self.halves[index],
                self.centers[index] + factor * self.halves[index])

    def first_overlap(self) -> Optional[Tuple[int, int]]:
        """Indices of two intersecting intervals, or None if pairwise disjoint."""
        order = sorted(range(len(self)), key=lambda i: self.interval(i))
        for first, second in zip(order, order[1:]):
            if self.interval(second)[0] <= self.interval(first)[1]:
                return tuple(sorted((first, second)))
        return None


class CombipStatus(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    PREMISE_UNMET = "premise_unmet"


@dataclass(frozen=True)
class CombipResult:
    status: CombipStatus
    size_u: int
    size_v: int
    bound: Fraction = field(default=Fraction(0))

    def __bool__(self) -> bool:
        return self.status is not CombipStatus.VIOLATED


class CertificateStatus(str, Enum):
    EXACT = "exact"
    SAMPLED_ONLY = "sampled_only"


@dataclass(frozen=True)
class ThinnessResult:
    """Largest number of shapes found over a common point, and that point."""
    c: int
    status: CertificateStatus
    witness: Optional[Tuple] = None
    candidates: int = 0


@dataclass(frozen=True)
class TamenessCertificate:
    """
    Outcome of a (c, ⊑_s)-tameness check.

    `passed` is the verdict; `status` says whether every sub-check was
    exact. A failure carries a witness: a point covered more than c times,
    a vertex pair whose shapes are incomparable, or a non-convex vertex.
    """
    c: int
    s: Scalar
    status: CertificateStatus
    measured_c: int
    s_star: Optional[Scalar]
    convex: bool
    thin: bool
    comparable: bool
    undecided_pairs: Tuple[Tuple[int, int], ...] = ()
    witness: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.convex and self.thin and self.comparable

    def to_dict(self) -> Dict[str, Any]:
        return {
            "c": self.c,
            "s": self.s,
            "passed": self.passed,
            "status": self.status.value,
            "measured_c": self.measured_c,
            "s_star": self.s_star,
            "convex": self.convex,
            "thin": self.thin,
            "comparable": self.comparable,
            "undecided_pairs": [list(pair) for pair in self.undecided_pairs],
            "witness": self.witness,
        }
