"""Exception types shared across the toolkit."""
from __future__ import annotations


class MacroEvaError(Exception):
    """Base class for all toolkit errors."""


class ParseError(MacroEvaError):
    """Malformed input text (CSV or JSON). Carries a line number when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(MacroEvaError):
    """Structurally well-formed input that violates a domain invariant."""


class CollinearInputError(MacroEvaError):
    """Perfectly collinear regression input (|r| = 1), almost surely a data error.

    Carries the degenerate fit so callers can report what was rejected.
    """

    def __init__(self, slope: float, pearson_r: float):
        super().__init__(
            f"slope {slope:.5f}, r {pearson_r:.4f} rejected: input is perfectly "
            "collinear (|r| = 1), p-value undefined"
        )
        self.slope = slope
        self.pearson_r = pearson_r


class InfeasibleError(MacroEvaError):
    """Analytically infeasible request (e.g. every peer excluded for an indicator)."""
