"""
Linear orderings of vertices and the coloring profiles measured under them.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from src.utils.errors import InvalidParameterError


@dataclass(frozen=True)
class Ordering:
    """
    A linear order on 0..n-1. `order[i]` is the i-th vertex; `rank[v]` is
    the position of v, so u precedes v iff rank[u] < rank[v].
    """
    order: Tuple[int, ...]
    rank: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        if sorted(order) != list(range(len(order))):
            raise InvalidParameterError("An ordering must be a permutation of 0..n-1")
        rank = [0] * len(order)
        for position, vertex in enumerate(order):
            rank[vertex] = position
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "rank", tuple(rank))

    @classmethod
    def identity(cls, n: int) -> "Ordering":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.order)

    def precedes(self, u: int, v: int) -> bool:
        return self.rank[u] < self.rank[v]

    def to_list(self) -> List[int]:
        return list(self.order)


@dataclass(frozen=True)
class ProfileEntry:
    r: int
    value: int
    vertex: int


@dataclass(frozen=True)
class ColoringProfile:
    """col_{≺,r} for r = 1..r_max, each with a vertex attaining it."""
    entries: Tuple[ProfileEntry, ...]

    def values(self) -> List[int]:
        return [entry.value for entry in self.entries]

    def radii(self) -> List[int]:
        return [entry.r for entry in self.entries]

    def value(self, r: int) -> int:
        for entry in self.entries:
            if entry.r == r:
                return entry.value
        raise InvalidParameterError(f"Radius {r} is not in the profile")

    def to_rows(self) -> List[Dict]:
        return [{"r": e.r, "col": e.value, "argmax_vertex": e.vertex} for e in self.entries]


@dataclass(frozen=True)
class HubStarLevel:
    """
    One level of a hub-star tower: the new vertices (hubs, then path
    internals) occupy ids start..stop-1, joined to the `old_size` earlier
    vertices by paths of the given length.
    """
    start: int
    stop: int
    length: int
    old_size: int
    hubs: int
