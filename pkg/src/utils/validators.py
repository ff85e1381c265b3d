"""
Parameter validation helpers.

Each helper raises a toolkit error naming the offending parameter, so
operations can state their preconditions in one line.
"""
from fractions import Fraction
from numbers import Real
from typing import Sequence

from src.utils.errors import DimensionMismatchError, InvalidParameterError


def to_scalar(value) -> Fraction:
    """
    Convert a number or a "p/q" string to an exact rational.

    Floats are converted through their shortest decimal representation so
    that JSON numbers such as 0.1 become 1/10.

    Raises:
        InvalidParameterError: If the value is not a number
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidParameterError(f"Invalid scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidParameterError(f"Invalid rational literal: {value!r}")
    if isinstance(value, Real):
        return Fraction(float(value))
    raise InvalidParameterError(f"Invalid scalar: {value!r}")


def require_positive(name: str, value) -> None:
    """Require value > 0."""
    if not value > 0:
        raise InvalidParameterError(f"{name} must be positive, got {value}")


def require_at_least(name: str, value, bound) -> None:
    """Require value >= bound."""
    if value < bound:
        raise InvalidParameterError(f"{name} must be at least {bound}, got {value}")


def require_int_at_least(name: str, value, bound: int) -> None:
    """Require an integer value >= bound."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    require_at_least(name, value, bound)


def require_same_dimension(first: int, second: int, what: str = "shapes") -> None:
    """Require two dimensions to agree."""
    if first != second:
        raise DimensionMismatchError(f"Dimension mismatch between {what}: {first} vs {second}")


def require_vector(name: str, vector: Sequence, dimension: int) -> None:
    """Require a vector of the given length."""
    if len(vector) != dimension:
        raise DimensionMismatchError(
            f"{name} has {len(vector)} coordinates, expected {dimension}")
