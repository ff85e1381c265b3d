"""
Executable forms of the implications between the comparability relations.

Each verifier checks one implication on one pair of shapes and returns
whether it was confirmed. An Unknown sub-result makes the implication
vacuous: it counts as confirmed and a warning is logged.
"""
from fractions import Fraction
from typing import Callable, List

from src.geometry.measures import volume
from src.models.results import CombipResult, CombipStatus, IntervalFamily, TriBool
from src.relations.comparability import le_ks, sqsubseteq_s
from src.relations.cube_section import cube_section_constant
from src.utils.errors import PreconditionError
from src.utils.logger import setup_logger
from src.utils.validators import require_int_at_least, to_scalar

logger = setup_logger(__name__)

DENOMINATOR_LIMIT = 10**9


def rel2_factor(s, dimension: int) -> Fraction:
    """k = s * d^(d + 3/2) * gamma_d, rounded to a rational (16 for s = 1, d = 2)."""
    gamma = cube_section_constant(dimension)
    value = float(s) * dimension ** (dimension + 1.5) * gamma
    return Fraction(value).limit_denominator(DENOMINATOR_LIMIT)


def cmp_factor(s, dimension: int) -> Fraction:
    """s' = max(s, k^d) with k = rel2_factor(s, d)."""
    s = to_scalar(s)
    return max(s, rel2_factor(s, dimension) ** dimension)


def incomparability_threshold(dimension: int, m) -> float:
    """The k up to which the crossing-rectangle construction stays <=_k-incomparable."""
    return 2 * dimension ** 2.5 * float(m)


def _implication(antecedent: TriBool, consequent: Callable[[], TriBool], what: str) -> bool:
    """Evaluate the consequent only when the antecedent holds."""
    if antecedent.failed:
        return True
    if antecedent.undecided:
        logger.warning(f"{what}: undecided antecedent, counted as a vacuous pass")
        return True
    result = consequent()
    if result.undecided:
        logger.warning(f"{what}: undecided consequent, counted as a vacuous pass")
        return True
    if result.failed:
        logger.debug(f"{what}: consequent fails with witness {result.witness}")
    return result.held


def verify_rel1(first, second, k, s) -> bool:
    """le_ks(first, second, k, s) implies first ⊑_{max(k,s)^d} second."""
    factor = max(to_scalar(k), to_scalar(s)) ** first.dimension
    return _implication(le_ks(first, second, k, s),
                        lambda: sqsubseteq_s(first, second, factor), "rel1")


def verify_rel2(first, second, s) -> bool:
    """first ⊑_s second implies le_ks(first, second, k, k) with k = rel2_factor(s, d)."""
    k = rel2_factor(s, first.dimension)
    return _implication(sqsubseteq_s(first, second, s),
                        lambda: le_ks(first, second, k, k), "rel2")


def verify_cmp(first, second, s) -> bool:
    """
    For comparable shapes with vol(first) <= vol(second), check that
    first ⊑_{s'} second holds with s' = cmp_factor(s, d).

    Raises:
        PreconditionError: If the volume order is reversed or the pair is
            not ⊑_s-comparable
    """
    first_volume, second_volume = volume(first), volume(second)
    if first_volume > second_volume:
        raise PreconditionError(
            f"Expected vol(B1) <= vol(B2), measured {float(first_volume):.6g} > {float(second_volume):.6g}")
    forward, backward = sqsubseteq_s(first, second, s), sqsubseteq_s(second, first, s)
    if forward.failed and backward.failed:
        raise PreconditionError(f"Shapes are not comparable at s = {s}")
    if forward.undecided and not backward.held or backward.undecided and not forward.held:
        logger.warning("cmp: comparability undecided, counted as a vacuous pass")
        return True
    result = sqsubseteq_s(first, second, cmp_factor(s, first.dimension))
    if result.undecided:
        logger.warning("cmp: undecided sub-result, counted as a vacuous pass")
        return True
    return result.held


def _combip_premise_violations(first: IntervalFamily, second: IntervalFamily, l: int,
                               s_prime) -> List[str]:
    problems = []
    for name, family in (("U", first), ("V", second)):
        overlap = family.first_overlap()
        if overlap is not None:
            problems.append(f"{name} intervals {overlap[0]} and {overlap[1]} intersect")
    for i in range(len(first)):
        lo, hi = first.interval(i)
        for j in range(len(second)):
            if second.length(j) > s_prime * first.length(i):
                problems.append(f"|J_{j}| > s'|I_{i}|")
            scaled_lo, scaled_hi = second.scaled(j, l)
            if scaled_lo > hi or lo > scaled_hi:
                problems.append(f"I_{i} misses {l} * J_{j}")
    return problems


def combip_check(first: IntervalFamily, second: IntervalFamily, l: int, s_prime: int) -> CombipResult:
    """
    Counting bound for interval families: if |U| >= s' + 6 then |V| <= 2 s' l^2.

    Args:
        first: The family U (pairwise disjoint)
        second: The family V (pairwise disjoint)
        l: Scale applied to each interval of V about its center
        s_prime: Length ratio bound |J| <= s'|I|

    Returns:
        CombipResult: PREMISE_UNMET when |U| < s' + 6

    Raises:
        PreconditionError: Listing every violated premise
    """
    require_int_at_least("l", l, 1)
    require_int_at_least("s_prime", s_prime, 1)
    problems = _combip_premise_violations(first, second, l, s_prime)
    if problems:
        raise PreconditionError("Interval families violate the premises: " + "; ".join(problems[:10]))
    bound = Fraction(2 * s_prime * l * l)
    if len(first) < s_prime + 6:
        return CombipResult(CombipStatus.PREMISE_UNMET, len(first), len(second), bound)
    status = CombipStatus.HOLDS if len(second) <= bound else CombipStatus.VIOLATED
    return CombipResult(status, len(first), len(second), bound)
