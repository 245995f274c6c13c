"""
Error Types.

Exception hierarchy shared by the analytic, generation and simulation modules.

Every error carries an ``exit_code`` so the command-line front end can map
failures without inspecting messages:
    - 2: invalid parameters, infeasible targets, degenerate inputs
    - 3: numeric/solver failures and exhausted retries
"""
from __future__ import annotations

from typing import Any, Dict, Optional


class CascadesError(Exception):
    """Base class for all library errors."""

    exit_code: int = 1


class ParameterError(CascadesError, ValueError):
    """A parameter is outside its valid domain."""

    exit_code = 2


class TruncationError(ParameterError):
    """The dropped tail of a truncated distribution is too heavy for r_max."""


class InfeasibleError(ParameterError):
    """A tuning target cannot be reached (e.g. C above C^max)."""


class DegenerateGraphError(ParameterError):
    """A statistic is undefined on the given graph (empty, no degree >= 2)."""


class NumericError(CascadesError, ArithmeticError):
    """
    A solver failed or detected an inconsistent bracket.

    Attributes:
        diagnostics: Free-form values useful for reproducing the failure
    """

    exit_code = 3

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.diagnostics.items())
        return f"{base} ({details})"


class RetryLimitError(CascadesError):
    """Reject sampling exhausted its attempt budget."""

    exit_code = 3

    def __init__(self, message: str, attempts: int):
        super().__init__(message)
        self.attempts = attempts


class NotSimpleError(CascadesError):
    """Internal signal: a sampled multigraph has loops or parallel edges."""
