"""Parallel STRIPS planner: regression search with online branch fattening."""

from ._core import (
    ParseError,
    PlanFormatError,
    Solution,
    Task,
    UnsupportedError,
    ValidationReport,
    csv_header,
    deorder,
    solve,
    solve_text,
    validate,
)

__all__ = [
    "ParseError",
    "PlanFormatError",
    "Solution",
    "Task",
    "UnsupportedError",
    "ValidationReport",
    "csv_header",
    "deorder",
    "solve",
    "solve_text",
    "validate",
]
