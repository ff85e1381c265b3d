"""
Graph and representation models.

Vertices are dense integers 0..n-1; human-readable names live in a
separate label tuple so product constructions can pair ids cheaply.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from src.models.shapes import PlacedShape
from src.utils.errors import DimensionMismatchError, InvalidParameterError
from src.utils.validators import require_int_at_least


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with sorted adjacency lists."""
    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise InvalidParameterError(f"Expected {self.n} adjacency lists, got {len(self.adjacency)}")
        if self.labels is not None and len(self.labels) != self.n:
            raise InvalidParameterError(f"Expected {self.n} labels, got {len(self.labels)}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]],
                   labels: Optional[Sequence[str]] = None) -> "Graph":
        """
        Build a graph from an edge list; duplicate edges are merged.

        Raises:
            InvalidParameterError: On self-loops or out-of-range endpoints
        """
        require_int_at_least("n", n, 0)
        neighbors: List[Set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"Edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InvalidParameterError(f"Self-loop at vertex {u}")
            neighbors[u].add(v)
            neighbors[v].add(u)
        return cls(n, tuple(tuple(sorted(adj)) for adj in neighbors),
                   None if labels is None else tuple(str(label) for label in labels))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Relabel the nodes to 0..n-1 in sorted order, keeping the originals as labels."""
        try:
            nodes = sorted(graph.nodes)
        except TypeError:
            nodes = sorted(graph.nodes, key=str)
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in graph.edges),
                              [str(node) for node in nodes])

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u, adj in enumerate(self.adjacency):
            for v in adj:
                if u < v:
                    yield u, v

    @property
    def edge_count(self) -> int:
        return sum(len(adj) for adj in self.adjacency) // 2

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        adj = self.adjacency[u]
        return v in adj

    def label(self, v: int) -> str:
        return str(v) if self.labels is None else self.labels[v]

    def components(self, removed: Iterable[int] = ()) -> List[List[int]]:
        """Connected components of G - removed, each sorted, ordered by least vertex."""
        removed = set(removed)
        seen = set(removed)
        result = []
        for start in range(self.n):
            if start in seen:
                continue
            seen.add(start)
            component, stack = [start], [start]
            while stack:
                u = stack.pop()
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        component.append(w)
                        stack.append(w)
            result.append(sorted(component))
        return result

    def is_bipartite(self) -> bool:
        return nx.is_bipartite(self.to_networkx())

    def to_dict(self) -> Dict:
        data = {"n": self.n, "edges": [list(edge) for edge in self.edges()]}
        if self.labels is not None:
            data["labels"] = list(self.labels)
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> "Graph":
        return cls.from_edges(int(data["n"]), (tuple(e) for e in data["edges"]), data.get("labels"))


def path_graph(t: int) -> Graph:
    """P_t: t vertices in a row."""
    require_int_at_least("t", t, 1)
    return Graph.from_networkx(nx.path_graph(t))


def cycle_graph(n: int) -> Graph:
    require_int_at_least("n", n, 3)
    return Graph.from_networkx(nx.cycle_graph(n))


def complete_graph(n: int) -> Graph:
    require_int_at_least("n", n, 1)
    return Graph.from_networkx(nx.complete_graph(n))


def star_graph(r: int) -> Graph:
    """T_r: a center (vertex 0) joined to r leaves."""
    require_int_at_least("r", r, 0)
    return Graph.from_networkx(nx.star_graph(r))


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols grid; vertex id = row * cols + col."""
    require_int_at_least("rows", rows, 1)
    require_int_at_least("cols", cols, 1)
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return Graph.from_edges(rows * cols, edges, [f"({i},{j})" for i in range(rows) for j in range(cols)])


@dataclass(frozen=True)
class Representation:
    """One placed shape per vertex, all in the same dimension."""
    placements: Tuple[PlacedShape, ...]
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        placements = tuple(self.placements)
        if not placements:
            raise InvalidParameterError("A representation needs at least one vertex")
        dimension = placements[0].dimension
        for vertex, placed in enumerate(placements):
            if placed.dimension != dimension:
                raise DimensionMismatchError(
                    f"Vertex {vertex} has dimension {placed.dimension}, expected {dimension}")
        object.__setattr__(self, "placements", placements)
        if self.labels is not None:
            if len(self.labels) != len(placements):
                raise InvalidParameterError("A representation needs one label per vertex")
            object.__setattr__(self, "labels", tuple(str(label) for label in self.labels))

    @property
    def dimension(self) -> int:
        return self.placements[0].dimension

    @property
    def n(self) -> int:
        return len(self.placements)

    def __len__(self) -> int:
        return len(self.placements)

    def __getitem__(self, vertex: int) -> PlacedShape:
        return self.placements[vertex]

    def regions(self) -> list:
        return [placed.region for placed in self.placements]

    @property
    def is_exact(self) -> bool:
        return all(placed.is_exact for placed in self.placements)
