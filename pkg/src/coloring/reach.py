"""
Weak reachability sets and generalized coloring numbers.

L(v) for radius r under an ordering ≺ is the set of x ⪯ v joined to v by a
path of length at most r whose internal vertices all come after v.
"""
from collections import deque
from fractions import Fraction
from typing import Dict, List, Sequence, Set, Tuple

import numpy as np

from src.geometry.measures import volume
from src.models.graph import Graph, Representation
from src.models.ordering import ColoringProfile, HubStarLevel, Ordering, ProfileEntry
from src.relations.lemmas import cmp_factor, rel2_factor
from src.utils.constants import EXACT_COLORING_CAP
from src.utils.errors import InvalidParameterError, SizeCapError
from src.utils.logger import setup_logger
from src.utils.validators import require_at_least, require_int_at_least, to_scalar

logger = setup_logger(__name__)


def _check_vertex(graph: Graph, v: int) -> None:
    if not 0 <= v < graph.n:
        raise InvalidParameterError(f"Unknown vertex {v} (graph has {graph.n} vertices)")


def _first_radii(graph: Graph, ordering: Ordering, v: int, r_max: int) -> Dict[int, int]:
    """
    Least radius at which each member of L(v) appears (v itself at 0).

    BFS from v through vertices after v; an earlier vertex adjacent to a
    reached vertex at distance t joins at radius t + 1.
    """
    rank = ordering.rank
    first = {v: 0}
    distance = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if distance[u] >= r_max:
            continue
        for w in graph.neighbors(u):
            if rank[w] < rank[v]:
                if w not in first:
                    first[w] = distance[u] + 1
            elif w not in distance:
                distance[w] = distance[u] + 1
                queue.append(w)
    return first


def reach_set(graph: Graph, ordering: Ordering, r: int, v: int) -> Set[int]:
    """
    L_{G,≺,r}(v).

    Raises:
        InvalidParameterError: For an unknown vertex or r < 0
    """
    require_int_at_least("r", r, 0)
    _check_vertex(graph, v)
    return set(_first_radii(graph, ordering, v, r))


def reach_set_bruteforce(graph: Graph, ordering: Ordering, r: int, v: int) -> Set[int]:
    """Same set by enumerating every simple path of length at most r from v."""
    require_int_at_least("r", r, 0)
    _check_vertex(graph, v)
    rank = ordering.rank
    found = {v}

    def extend(u: int, length: int, visited: Set[int]) -> None:
        if length == r:
            return
        for w in graph.neighbors(u):
            if w in visited:
                continue
            if rank[w] < rank[v]:
                found.add(w)
            else:
                visited.add(w)
                extend(w, length + 1, visited)
                visited.discard(w)

    extend(v, 0, {v})
    return found


def col_profile(graph: Graph, ordering: Ordering, r_max: int) -> ColoringProfile:
    """
    col_{≺,r}(G) for r = 1..r_max. Ties for the argmax go to the lowest id.
    """
    require_int_at_least("r_max", r_max, 1)
    if len(ordering) != graph.n:
        raise InvalidParameterError(f"Ordering has {len(ordering)} vertices, graph has {graph.n}")
    # sizes[v, r] = |L_r(v)|
    sizes = np.zeros((graph.n, r_max + 1), dtype=np.int64)
    for v in graph.vertices():
        histogram = np.bincount(list(_first_radii(graph, ordering, v, r_max).values()),
                                minlength=r_max + 1)
        sizes[v] = np.cumsum(histogram[:r_max + 1])
    entries = []
    for r in range(1, r_max + 1):
        vertex = int(sizes[:, r].argmax()) if graph.n else 0
        entries.append(ProfileEntry(r, int(sizes[vertex, r]) if graph.n else 0, vertex))
    return ColoringProfile(tuple(entries))


def _suffix_reach_size(graph: Graph, v: int, suffix: int, r: int) -> int:
    """|L_r(v)| when exactly the vertices of the bitmask `suffix` come after v."""
    reached = {v}
    distance = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if distance[u] >= r:
            continue
        for w in graph.neighbors(u):
            if suffix >> w & 1:
                if w not in distance:
                    distance[w] = distance[u] + 1
                    queue.append(w)
            else:
                reached.add(w)
    return len(reached)


def strong_coloring_number_exact(graph: Graph, r: int,
                                 cap: int = EXACT_COLORING_CAP) -> Tuple[int, Ordering]:
    """
    col_r(G): the least col_{≺,r}(G) over all orderings.

    L(v) only depends on which vertices come after v, so the search runs
    over subsets: g(P) is the best value for the vertices of P placed
    first, in some order, ahead of the fixed suffix V - P.

    Returns:
        Tuple[int, Ordering]: The value and an ordering attaining it

    Raises:
        SizeCapError: If the graph has more than `cap` vertices
    """
    require_int_at_least("r", r, 1)
    if graph.n > cap:
        raise SizeCapError("strong coloring number", graph.n, cap)
    full = (1 << graph.n) - 1
    best: Dict[int, int] = {0: 0}
    choice: Dict[int, int] = {}
    for prefix in range(1, full + 1):
        suffix = full ^ prefix
        value, chosen = None, None
        for v in range(graph.n):
            if not prefix >> v & 1:
                continue
            rest = best[prefix ^ (1 << v)]
            if value is not None and rest >= value:
                continue
            candidate = max(rest, _suffix_reach_size(graph, v, suffix, r))
            if value is None or candidate < value:
                value, chosen = candidate, v
        best[prefix], choice[prefix] = value, chosen

    order: List[int] = []
    prefix = full
    while prefix:
        order.append(choice[prefix])
        prefix ^= 1 << choice[prefix]
    order.reverse()
    return best[full], Ordering(tuple(order))


def volume_ordering(representation: Representation) -> Ordering:
    """Vertices by non-increasing volume of their shapes, ties by id."""
    volumes = [volume(placed.shape) for placed in representation.placements]
    return Ordering(tuple(sorted(range(len(volumes)), key=lambda v: (-volumes[v], v))))


def delta_bound(c, s, dimension: int, k) -> Fraction:
    """δ = 2 c s (2k + 1)^d d^d, exactly."""
    c, s, k = to_scalar(c), to_scalar(s), to_scalar(k)
    for name, value in (("c", c), ("s", s), ("k", k)):
        require_at_least(name, value, 1)
    return 2 * c * s * (2 * k + 1) ** dimension * Fraction(dimension) ** dimension


def theorem_constants(c, s, dimension: int) -> Tuple[Fraction, Fraction, Fraction]:
    """
    (k', s', δ) for a (c, ⊑_s)-tame representation in dimension d:
    s' = cmp_factor(s, d), k' = rel2_factor(s', d), δ = delta_bound(c, s', d, k').
    """
    s_prime = cmp_factor(s, dimension)
    k_prime = rel2_factor(s_prime, dimension)
    return k_prime, s_prime, delta_bound(c, s_prime, dimension, k_prime)


def growth_slope(profile: ColoringProfile) -> float:
    """Least-squares slope of log col against log r."""
    if len(profile.entries) < 2:
        raise InvalidParameterError("A growth slope needs at least two radii")
    slope, _ = np.polyfit(np.log(profile.radii()), np.log(profile.values()), 1)
    return float(slope)


def verify_hub_star_pattern(graph: Graph, ordering: Ordering, levels: Sequence[HubStarLevel],
                            r: int) -> List[Tuple[int, int, int]]:
    """
    Check the reach sizes of every tower level's new vertices: at most 3
    below the level's path length, at most max(3, old_size + 1) from it on
    (a hub counts itself). A level is only checked while r stays below
    twice every later path length; beyond that, later hubs relay back into it.

    Returns:
        List[Tuple[int, int, int]]: (vertex, |L|, bound) for each violation
    """
    require_int_at_least("r", r, 0)
    violations = []
    for index, level in enumerate(levels):
        if any(r >= 2 * later.length for later in levels[index + 1:]):
            continue
        bound = 3 if r < level.length else max(3, level.old_size + 1)
        for v in range(level.start, level.stop):
            size = len(_first_radii(graph, ordering, v, r))
            if size > bound:
                violations.append((v, size, bound))
    if violations:
        logger.debug(f"Hub-star pattern at r={r}: {len(violations)} violations, first {violations[0]}")
    return violations
