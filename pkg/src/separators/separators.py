"""
Balanced separators: verification, an exhaustive oracle for small graphs,
and two constructive heuristics based on BFS layers.

A set X is a balanced separator of G when every component of G - X has at
most 2/3 of the vertices of G, compared in exact arithmetic.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from src.models.graph import Graph
from src.models.ordering import Ordering
from src.utils.constants import BALANCE_FRACTION, EXACT_SEPARATOR_CAP
from src.utils.errors import InvalidParameterError, SizeCapError
from src.utils.logger import setup_logger
from src.utils.validators import require_int_at_least

logger = setup_logger(__name__)

METHOD_GIVEN = "given"
METHOD_EXACT = "exact"
METHOD_BFS = "bfs-layer"
METHOD_ORDERING = "ordering"


def _within_balance(size: int, n: int) -> bool:
    return size <= BALANCE_FRACTION * n


@dataclass(frozen=True)
class SeparatorResult:
    separator: Tuple[int, ...]
    component_sizes: Tuple[int, ...]
    n: int
    method: str

    @property
    def size(self) -> int:
        return len(self.separator)

    @property
    def largest(self) -> int:
        return self.component_sizes[0] if self.component_sizes else 0

    @property
    def balance_ratio(self) -> Fraction:
        return Fraction(self.largest, self.n) if self.n else Fraction(0)

    @property
    def balanced(self) -> bool:
        return _within_balance(self.largest, self.n)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "n": self.n,
            "size": self.size,
            "separator": list(self.separator),
            "component_sizes": list(self.component_sizes),
            "balance_ratio": str(self.balance_ratio),
            "balanced": self.balanced,
        }


def is_balanced_separator(graph: Graph, separator: Iterable[int],
                          method: str = METHOD_GIVEN) -> SeparatorResult:
    """
    Components of G - X and whether X is balanced.

    Raises:
        InvalidParameterError: If X names a vertex outside the graph
    """
    separator = tuple(sorted(set(separator)))
    for v in separator:
        if not 0 <= v < graph.n:
            raise InvalidParameterError(f"Separator vertex {v} is not in the graph")
    sizes = sorted((len(c) for c in graph.components(separator)), reverse=True)
    return SeparatorResult(separator, tuple(sizes), graph.n, method)


def verify_separator(graph: Graph, result: SeparatorResult) -> bool:
    """Recompute the components of G - X and compare with the reported ones."""
    if result.n != graph.n:
        return False
    recomputed = is_balanced_separator(graph, result.separator)
    return recomputed.component_sizes == result.component_sizes


def _largest_piece_masks(neighbor_masks: Sequence[int], alive: int) -> int:
    """Size of the largest component of the subgraph induced by the bitmask."""
    largest = 0
    remaining = alive
    while remaining:
        frontier = remaining & -remaining
        component = frontier
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            fresh = neighbor_masks[bit.bit_length() - 1] & remaining & ~component
            component |= fresh
            frontier |= fresh
        remaining &= ~component
        largest = max(largest, bin(component).count("1"))
    return largest


def exact_min_balanced_separator(graph: Graph, cap: int = EXACT_SEPARATOR_CAP) -> SeparatorResult:
    """
    Smallest balanced separator by subset enumeration; among separators of
    least size the lexicographically smallest is returned.

    Raises:
        SizeCapError: If the graph has more than `cap` vertices
    """
    if graph.n > cap:
        raise SizeCapError("exact balanced separator", graph.n, cap)
    masks = [sum(1 << w for w in graph.neighbors(v)) for v in graph.vertices()]
    full = (1 << graph.n) - 1
    for size in range(graph.n + 1):
        for chosen in combinations(range(graph.n), size):
            removed = sum(1 << v for v in chosen)
            if _within_balance(_largest_piece_masks(masks, full & ~removed), graph.n):
                return is_balanced_separator(graph, chosen, METHOD_EXACT)
    return is_balanced_separator(graph, range(graph.n), METHOD_EXACT)


def _bfs_layers(graph: Graph, start: int, allowed: Set[int]) -> List[List[int]]:
    """BFS layers from start inside the allowed vertex set, each layer sorted."""
    layers = [[start]]
    seen = {start}
    while True:
        following = sorted({w for u in layers[-1] for w in graph.neighbors(u)
                            if w in allowed and w not in seen})
        if not following:
            return layers
        seen.update(following)
        layers.append(following)


def _largest_component(graph: Graph, removed: Set[int]) -> List[int]:
    components = graph.components(removed)
    return max(components, key=len) if components else []


def _pseudo_peripheral(graph: Graph, start: int, allowed: Set[int]) -> int:
    return min(_bfs_layers(graph, start, allowed)[-1])


def _best_layer_cut(layers: List[List[int]], n: int) -> Optional[Tuple[int, List[int]]]:
    """
    Cheapest single layer or pair of layers whose removal leaves the parts
    before, between and after the cut within the balance bound.
    """
    sizes = [len(layer) for layer in layers]
    prefix = [0]
    for size in sizes:
        prefix.append(prefix[-1] + size)
    total = prefix[-1]
    best = None
    for i in range(len(layers)):
        before, after = prefix[i], total - prefix[i + 1]
        if _within_balance(before, n) and _within_balance(after, n):
            if best is None or sizes[i] < best[0]:
                best = (sizes[i], [i])
    for i in range(len(layers)):
        for j in range(i + 1, len(layers)):
            cost = sizes[i] + sizes[j]
            if best is not None and cost >= best[0]:
                continue
            before = prefix[i]
            between = prefix[j] - prefix[i + 1]
            after = total - prefix[j + 1]
            if all(_within_balance(part, n) for part in (before, between, after)):
                best = (cost, [i, j])
    if best is None:
        return None
    return best[0], [v for index in best[1] for v in layers[index]]


def _greedy_degree_cut(graph: Graph, removed: Set[int], budget: int) -> Optional[List[int]]:
    """Remove highest-degree vertices of the largest piece until balanced, within budget."""
    taken: List[int] = []
    current = set(removed)
    while len(taken) <= budget:
        component = _largest_component(graph, current)
        if _within_balance(len(component), graph.n):
            return taken
        if len(taken) == budget:
            return None
        members = set(component)
        vertex = min(component, key=lambda v: (-sum(1 for w in graph.neighbors(v) if w in members), v))
        taken.append(vertex)
        current.add(vertex)
    return None


def bfs_layer_separator(graph: Graph, starts: Optional[Sequence[int]] = None) -> SeparatorResult:
    """
    Balanced separator from BFS layers of the largest remaining piece.

    Each round takes the cheapest balancing cut among single layers and
    pairs of layers over the start vertices (by default the least vertex of
    the piece and a pseudo-peripheral vertex). A greedy highest-degree
    removal wins when it balances with fewer vertices. When nothing
    balances, the layer that most shrinks the largest part is cut and the
    next round starts on what remains.
    """
    separator: Set[int] = set()
    round_number = 0
    while True:
        component = _largest_component(graph, separator)
        if _within_balance(len(component), graph.n):
            break
        round_number += 1
        allowed = set(component)
        if starts and round_number == 1:
            roots = [v for v in starts if v in allowed] or [component[0]]
        else:
            roots = [component[0], _pseudo_peripheral(graph, component[0], allowed)]
        best_cut = None
        fallback = None
        for root in dict.fromkeys(roots):
            layers = _bfs_layers(graph, root, allowed)
            cut = _best_layer_cut(layers, graph.n)
            if cut is not None and (best_cut is None or cut[0] < best_cut[0]):
                best_cut = cut
            before = 0
            for layer in layers:
                after = len(component) - before - len(layer)
                key = (max(before, after), len(layer))
                if fallback is None or key < fallback[0]:
                    fallback = (key, layer)
                before += len(layer)

        if best_cut is None:
            separator.update(fallback[1])
            continue
        greedy = _greedy_degree_cut(graph, separator, best_cut[0] - 1)
        separator.update(best_cut[1] if greedy is None else greedy)
    result = is_balanced_separator(graph, separator, METHOD_BFS)
    logger.debug(f"BFS-layer separator: size {result.size}, largest piece {result.largest}/{graph.n}")
    return result


def ordering_separator(graph: Graph, ordering: Ordering, r: int) -> SeparatorResult:
    """
    Ball-growing separator guided by an ordering.

    Each round grows BFS layers around the earliest vertex (under the
    ordering) of the largest piece. From the first layer beyond which at
    most 2n/3 vertices remain, it looks r layers ahead for a layer no
    larger than the ball inside it divided by r, taking the thinnest layer
    of that window when none qualifies. Rounds repeat until balanced.
    """
    require_int_at_least("r", r, 1)
    if len(ordering) != graph.n:
        raise InvalidParameterError(f"Ordering has {len(ordering)} vertices, graph has {graph.n}")
    separator: Set[int] = set()
    while True:
        component = _largest_component(graph, separator)
        if _within_balance(len(component), graph.n):
            break
        root = min(component, key=lambda v: ordering.rank[v])
        layers = _bfs_layers(graph, root, set(component))
        ball = 0
        inside = []
        for layer in layers:
            inside.append(ball)
            ball += len(layer)
        start = next(i for i in range(len(layers))
                     if _within_balance(len(component) - inside[i] - len(layers[i]), graph.n))
        window = range(start, min(start + r, len(layers)))
        chosen = next((i for i in window if i > 0 and len(layers[i]) * r <= inside[i]), None)
        if chosen is None:
            chosen = min(window, key=lambda i: (len(layers[i]), i))
        separator.update(layers[chosen])
    result = is_balanced_separator(graph, separator, METHOD_ORDERING)
    logger.debug(f"Ordering separator (r={r}): size {result.size}, largest piece {result.largest}/{graph.n}")
    return result
