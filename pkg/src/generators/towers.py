"""
Hub-star towers: G_0 is edgeless on N_0 vertices and G_i adds N_i hubs to
G_{i-1}, each joined to every old vertex by a fresh path of length l_i.
The towers have no box representation, so only the graph and its
ordering are built.
"""
from typing import List, Sequence, Tuple

from src.generators.bundle import InstanceBundle, finalize
from src.models.graph import Graph
from src.models.ordering import HubStarLevel, Ordering
from src.utils.errors import GeneratorError, InvalidParameterError
from src.utils.logger import setup_logger
from src.utils.validators import require_int_at_least

logger = setup_logger(__name__)


def expected_vertex_count(N: Sequence[int], l: Sequence[int]) -> int:
    """N_0 + sum of N_i (1 + |V(G_{i-1})| (l_i - 1))."""
    total = N[0]
    for hubs, length in zip(N[1:], l):
        total += hubs * (1 + total * (length - 1))
    return total


def hub_star_family(N: Sequence[int], l: Sequence[int] = ()) -> InstanceBundle:
    """
    Build the tower G_d for N = (N_0..N_d) and l = (l_1..l_d).

    Vertex ids follow the ordering that keeps the reach sets small: the
    old graph first, then the new hubs, then the path internals numbered
    from the hub side. The returned ordering is the identity.

    Raises:
        InvalidParameterError: If the lengths of N and l do not match
        GeneratorError: If the vertex count disagrees with the closed form
    """
    N, l = [int(x) for x in N], [int(x) for x in l]
    if not N or len(l) != len(N) - 1:
        raise InvalidParameterError(f"Need |l| = |N| - 1 with N non-empty, got N={N}, l={l}")
    require_int_at_least("N_0", N[0], 1)
    for i, (hubs, length) in enumerate(zip(N[1:], l), start=1):
        require_int_at_least(f"N_{i}", hubs, 1)
        require_int_at_least(f"l_{i}", length, 1)

    size = N[0]
    edges: List[Tuple[int, int]] = []
    levels: List[HubStarLevel] = []
    for hubs, length in zip(N[1:], l):
        old_size = size
        hub_ids = range(size, size + hubs)
        following = size + hubs
        for hub in hub_ids:
            for old in range(old_size):
                previous = hub
                for _ in range(length - 1):
                    edges.append((previous, following))
                    previous = following
                    following += 1
                edges.append((previous, old))
        levels.append(HubStarLevel(size, following, length, old_size, hubs))
        size = following

    expected = expected_vertex_count(N, l)
    if size != expected:
        raise GeneratorError(f"Hub-star tower has {size} vertices, closed form gives {expected}")
    graph = Graph.from_edges(size, edges)
    logger.debug(f"Hub-star tower N={N} l={l}: {size} vertices, {graph.edge_count} edges")
    return finalize(InstanceBundle("hub-star", {"N": N, "l": l}, 0, graph,
                                   ordering=Ordering.identity(size), levels=tuple(levels)))
