"""
Generated instances and their self-verification.
"""
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Tuple

from src.graphs.intersection import build_intersection_graph
from src.graphs.tameness import thinness
from src.models.graph import Graph, Representation
from src.models.ordering import HubStarLevel, Ordering
from src.models.results import Scalar
from src.utils.errors import GeneratorError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class InstanceBundle:
    """
    A generated instance: the representation (absent for purely
    combinatorial families), its graph, the values the generator promises
    and what was measured on it.
    """
    family: str
    params: Dict[str, Any]
    seed: int
    graph: Graph
    representation: Optional[Representation] = None
    expected_graph: Optional[Graph] = None
    expected_thinness: Optional[int] = None
    expected_s: Optional[Scalar] = None
    ordering: Optional[Ordering] = None
    levels: Tuple[HubStarLevel, ...] = ()
    measured_c: Optional[int] = None
    s_star: Optional[Scalar] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def dimension(self) -> Optional[int]:
        return None if self.representation is None else self.representation.dimension

    def provenance(self) -> Dict[str, Any]:
        return {"generator": self.family, "params": dict(self.params), "seed": self.seed}


def finalize(bundle: InstanceBundle) -> InstanceBundle:
    """
    Check the bundle against its expected fields and record the measured
    thinness.

    Raises:
        GeneratorError: If the instance does not match what it promises
    """
    if bundle.expected_graph is not None and bundle.graph != bundle.expected_graph:
        missing = set(bundle.expected_graph.edges()) - set(bundle.graph.edges())
        extra = set(bundle.graph.edges()) - set(bundle.expected_graph.edges())
        raise GeneratorError(
            f"{bundle.family}: graph differs from the expected one "
            f"(missing {sorted(missing)[:5]}, unexpected {sorted(extra)[:5]})")
    measured = bundle.measured_c
    if bundle.representation is not None and measured is None:
        measured = thinness(bundle.representation, bundle.seed).c
    if bundle.expected_thinness is not None and measured != bundle.expected_thinness:
        raise GeneratorError(
            f"{bundle.family}: measured thinness {measured}, expected {bundle.expected_thinness}")
    logger.debug(f"{bundle.family} {bundle.params}: {bundle.n} vertices, c={measured}")
    return replace(bundle, measured_c=measured)


def geometric_bundle(family: str, params: Dict[str, Any], seed: int,
                     representation: Representation, **fields) -> InstanceBundle:
    """Bundle whose graph is the intersection graph of the representation."""
    graph = build_intersection_graph(representation)
    return finalize(InstanceBundle(family, params, seed, graph, representation, **fields))
