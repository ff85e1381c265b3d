"""
Dichotomy for families of boxes: either k boxes have pairwise disjoint
projections on one axis, or at least n / k^d boxes share a point.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from src.models.shapes import Box
from src.utils.errors import InvalidParameterError
from src.utils.logger import setup_logger
from src.utils.validators import require_int_at_least, require_same_dimension

logger = setup_logger(__name__)

DISJOINT_BRANCH = 1
COMMON_POINT_BRANCH = 2


@dataclass(frozen=True)
class DichotomyResult:
    """
    Certificate of one branch.

    Branch 1: `axis` and the indices of k boxes whose projections on it are
    pairwise disjoint. Branch 2: the indices of boxes containing `point`.
    """
    branch: int
    indices: Tuple[int, ...]
    axis: Optional[int] = None
    point: Optional[Tuple[Fraction, ...]] = None

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "axis": self.axis,
            "indices": list(self.indices),
            "point": None if self.point is None else [str(x) for x in self.point],
        }


def _greedy_disjoint(boxes: Sequence[Box], members: Sequence[int], axis: int) -> List[int]:
    """Maximum set of pairwise disjoint projections, chosen by right endpoint."""
    chosen: List[int] = []
    last_hi = None
    for index in sorted(members, key=lambda i: (boxes[i].hi[axis], i)):
        if last_hi is None or boxes[index].lo[axis] > last_hi:
            chosen.append(index)
            last_hi = boxes[index].hi[axis]
    return chosen


def boxes_dichotomy(boxes: Sequence[Box], k: int) -> DichotomyResult:
    """
    Args:
        boxes: A non-empty family of boxes of one dimension
        k: Target count of disjoint projections

    Returns:
        DichotomyResult: Branch 1 on the lowest axis that allows it,
        otherwise branch 2

    Raises:
        InvalidParameterError: For an empty family
    """
    if not boxes:
        raise InvalidParameterError("Dichotomy needs a non-empty family of boxes")
    require_int_at_least("k", k, 1)
    dimension = boxes[0].dimension
    for box in boxes:
        require_same_dimension(dimension, box.dimension, "boxes")

    everyone = list(range(len(boxes)))
    for axis in range(dimension):
        chosen = _greedy_disjoint(boxes, everyone, axis)
        if len(chosen) >= k:
            logger.debug(f"Disjoint projections on axis {axis}: {chosen[:k]}")
            return DichotomyResult(DISJOINT_BRANCH, tuple(sorted(chosen[:k])), axis=axis)

    # Fewer than k disjoint projections on every axis: the right ends of the
    # greedy selection stab every interval, so one of them stabs a 1/(k-1) share.
    members = everyone
    point = []
    for axis in range(dimension):
        stabs = [boxes[i].hi[axis] for i in _greedy_disjoint(boxes, members, axis)]
        best_members, best_x = None, None
        for x in stabs:
            covered = [i for i in members if boxes[i].lo[axis] <= x <= boxes[i].hi[axis]]
            if best_members is None or len(covered) > len(best_members):
                best_members, best_x = covered, x
        members = best_members
        point.append(best_x)
    logger.debug(f"Common point {tuple(str(x) for x in point)} in {len(members)} boxes")
    return DichotomyResult(COMMON_POINT_BRANCH, tuple(members), point=tuple(point))


def verify_dichotomy(boxes: Sequence[Box], k: int, result: DichotomyResult) -> bool:
    """Exact re-check of a dichotomy certificate."""
    indices = result.indices
    if len(set(indices)) != len(indices) or any(not 0 <= i < len(boxes) for i in indices):
        return False
    if result.branch == DISJOINT_BRANCH:
        if len(indices) != k or result.axis is None:
            return False
        spans = sorted((boxes[i].lo[result.axis], boxes[i].hi[result.axis]) for i in indices)
        return all(prev[1] < nxt[0] for prev, nxt in zip(spans, spans[1:]))
    if result.branch == COMMON_POINT_BRANCH:
        if result.point is None:
            return False
        dimension = boxes[0].dimension
        if len(indices) * k ** dimension < len(boxes):
            return False
        return all(boxes[i].contains_point(result.point) for i in indices)
    return False
