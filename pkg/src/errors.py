"""
Errors
Exception hierarchy shared by every package of the estimator
"""

from typing import Optional


class EstimationError(Exception):
    """Base class for all estimator errors."""
    exit_code = 1


class ValidationError(EstimationError):
    """Raised when an input violates a documented precondition."""
    exit_code = 1


class DegenerateInputError(ValidationError):
    """Raised when a statistic is undefined for the given inputs (zero spread)."""
    pass


class ParamStringError(ValidationError):
    """Raised when a parameter string cannot be parsed."""

    def __init__(self, message: str, flag: Optional[str] = None):
        super().__init__(message)
        self.flag = flag


class NumericOverflowError(EstimationError):
    """Raised when a kernel evaluation produces a non-finite value."""
    exit_code = 1


class ConvergenceError(EstimationError):
    """Raised when the dual solver exhausts its iteration budget."""
    exit_code = 2

    def __init__(self, message: str, violation: float, iterations: int):
        super().__init__(message)
        self.violation = violation
        self.iterations = iterations


class SearchError(EstimationError):
    """Raised when every cell of a grid search failed."""
    exit_code = 2


class FormatError(EstimationError):
    """Raised for unreadable, truncated or wrongly versioned files."""
    exit_code = 3


class PipelineStageError(EstimationError):
    """Raised when a pipeline stage fails; wraps the underlying error."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, 'exit_code', 3)
