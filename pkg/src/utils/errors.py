"""
Exception hierarchy for the toolkit.

Every error derives from ValueError so that callers catching ValueError
(the convention of the CLI layer) keep working.
"""


class ToolkitError(ValueError):
    """Base class for all toolkit errors."""


class InvalidParameterError(ToolkitError):
    """A numeric or structural parameter is out of range."""


class DimensionMismatchError(ToolkitError):
    """Two shapes or vectors do not share a dimension."""


class DegenerateShapeError(ToolkitError):
    """A shape is not full-dimensional."""


class UnsupportedDimensionError(ToolkitError):
    """The requested dimension is outside what the backend supports."""


class PreconditionError(ToolkitError):
    """A documented precondition of an operation does not hold."""


class SizeCapError(ToolkitError):
    """An exhaustive oracle was asked to run above its size cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds the cap of {cap}; use a heuristic method")
        self.size = size
        self.cap = cap


class GeneratorError(ToolkitError):
    """A generator failed to build or self-verify an instance."""


class InstanceFormatError(ToolkitError):
    """An instance, graph or shape file is malformed."""


class ConfigError(ToolkitError):
    """An experiment configuration is invalid."""
