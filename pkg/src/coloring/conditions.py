"""
Inner/outer shape assignments and the four conditions that bound the weak
coloring numbers of a graph by δ r^d:

(a) every outer shape is convex and contains the inner shape,
(b) the inner shapes are c-thin,
(c) for u ≺ v: ω(v) ≤_k ω(u) and ω(v) ⊑_s ι(u),
(d) for every edge uv with u ≺ v: ω(v) meets ι(u).
"""
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from src.geometry.predicates import contains, intersects
from src.graphs.tameness import thinness
from src.models.graph import Graph, Representation
from src.models.ordering import Ordering
from src.models.results import TriBool
from src.relations.comparability import le_k, sqsubseteq_s
from src.utils.errors import InvalidParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class GeneralizedRep:
    """Inner shape ι(v) and outer shape ω(v) for every vertex v."""
    inner: Representation
    outer: Representation

    def __post_init__(self):
        if self.inner.n != self.outer.n:
            raise InvalidParameterError(
                f"Inner and outer maps cover {self.inner.n} and {self.outer.n} vertices")

    @classmethod
    def identical(cls, representation: Representation) -> "GeneralizedRep":
        """ι = ω = φ."""
        return cls(representation, representation)

    @property
    def n(self) -> int:
        return self.inner.n


@dataclass
class ConditionReport:
    """Pass/fail per condition with the first witnesses found."""
    containment: bool = True
    thin: bool = True
    comparable: bool = True
    edges_meet: bool = True
    measured_c: int = 0
    undecided: int = 0
    witnesses: Dict[str, List] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.containment and self.thin and self.comparable and self.edges_meet

    def add_witness(self, condition: str, witness) -> None:
        self.witnesses.setdefault(condition, []).append(witness)


def verify_generalized_conditions(rep: GeneralizedRep, graph: Graph, ordering: Ordering,
                                  c: int, k, s, witness_limit: int = 10) -> ConditionReport:
    """
    Check conditions (a) to (d) for the assignment under the ordering.

    Failures are recorded in the report, never raised. Undecided ⊑_s
    queries are counted in `undecided` and do not fail condition (c).
    """
    if rep.n != graph.n or len(ordering) != graph.n:
        raise InvalidParameterError("Assignment, graph and ordering must cover the same vertices")
    report = ConditionReport()
    inner, outer = rep.inner.placements, rep.outer.placements

    for v in graph.vertices():
        if not outer[v].shape.is_convex or not contains(outer[v], inner[v]):
            report.containment = False
            report.add_witness("a", v)
            if len(report.witnesses["a"]) >= witness_limit:
                break

    measured = thinness(rep.inner)
    report.measured_c = measured.c
    if measured.c > c:
        report.thin = False
        report.add_witness("b", list(measured.witness))

    cache: Dict[Tuple, Tuple[TriBool, TriBool]] = {}
    order = ordering.order
    for i, u in enumerate(order):
        for v in order[i + 1:]:
            key = (outer[v].shape, outer[u].shape, inner[u].shape)
            if key not in cache:
                cache[key] = (le_k(outer[v].shape, outer[u].shape, k),
                              sqsubseteq_s(outer[v].shape, inner[u].shape, s))
            scaled, overlap = cache[key]
            if overlap.undecided:
                report.undecided += 1
            if scaled.failed or overlap.failed:
                report.comparable = False
                if len(report.witnesses.get("c", [])) < witness_limit:
                    report.add_witness("c", (u, v))

    for a, b in graph.edges():
        u, v = (a, b) if ordering.precedes(a, b) else (b, a)
        if not intersects(outer[v], inner[u]):
            report.edges_meet = False
            if len(report.witnesses.get("d", [])) < witness_limit:
                report.add_witness("d", (u, v))

    logger.debug(f"Conditions: a={report.containment} b={report.thin} c={report.comparable} "
                 f"d={report.edges_meet} (undecided {report.undecided})")
    return report
