"""
Exception hierarchy for the rotary coverage simulator.
"""
from typing import Optional


class CoverageError(Exception):
    """Base class for all simulator errors."""

    def __init__(self, message: str = "", agent: Optional[int] = None):
        super().__init__(message)
        self.agent = agent

    def __str__(self) -> str:
        base = super().__str__()
        if self.agent is not None:
            return f"[agent {self.agent}] {base}"
        return base


# Geometry
class OriginOutsideRegion(CoverageError):
    """A ray origin or reference point is not strictly inside the region."""


class NonStarShaped(CoverageError):
    """A ray from a reference point crosses the region boundary more than once."""


# Field
class EmptySector(CoverageError):
    """An operation needing positive mass was given a zero-width sector."""


class DensityOutOfBounds(CoverageError):
    """A density sample is not strictly positive."""


# Dynamics
class NonFinite(CoverageError, ValueError):
    """A NaN or infinite value reached a numeric operation."""


class NoConvergence(CoverageError):
    """An iterative solver hit its iteration cap."""


class ReferenceEscaped(CoverageError):
    """A reference point left the coverage region."""


# Network
class IndexOutOfRange(CoverageError, IndexError):
    """An agent label outside 1..N."""


# Configuration
class ConfigError(CoverageError):
    """Base class for configuration problems."""


class ParseError(ConfigError):
    """The configuration document is not valid JSON."""


class ValidationError(ConfigError, ValueError):
    """A configuration value is missing, unknown or out of range."""

    def __init__(self, key: str, message: str = ""):
        super().__init__(f"{key}: {message}" if message else key)
        self.key = key
