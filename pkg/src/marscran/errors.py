"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class MarsCranError(Exception):
    """Base class. ``stage`` is filled in by the scenario pipeline."""

    stage: str | None = None

    def __str__(self) -> str:
        msg = super().__str__()
        if self.stage:
            return f"[{self.stage}] {msg}"
        return msg


class DomainError(MarsCranError, ValueError):
    """An input lies outside the domain of an operation."""


class LatencyInfeasibleError(DomainError):
    """Even the zenith geometry exceeds the allowed slant range."""

    def __init__(self, message: str, zenith_distance: float, max_range: float):
        super().__init__(message)
        self.zenith_distance = zenith_distance
        self.max_range = max_range


class CeilingExceededError(DomainError):
    """A target could not be met below the configured altitude ceiling."""


class NumericalError(MarsCranError, ArithmeticError):
    """An iterative method failed to make progress."""

    def __init__(self, message: str, altitude: float | None = None):
        super().__init__(message)
        self.altitude = altitude


class ConfigError(MarsCranError):
    """Scenario configuration problem.

    ``code`` is one of ``parse_error``, ``unknown_key``, ``invalid_value``
    or ``unknown_entry``; ``key`` names the offending setting when known.
    """

    def __init__(self, code: str, message: str, key: str | None = None):
        super().__init__(message)
        self.code = code
        self.key = key
