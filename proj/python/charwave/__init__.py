"""Closed-form solutions, control and decay analysis for the wave equation on moving intervals."""

from ._core import (
    Error,
    FeedbackSingularity,
    HorizonExceeded,
    ParseError,
    Scenario,
    ValidationError,
)

__all__ = [
    "Error",
    "FeedbackSingularity",
    "HorizonExceeded",
    "ParseError",
    "Scenario",
    "ValidationError",
]
