"""
Custom exceptions for the UCS hybrid toolkit.

This module provides a hierarchy of domain-specific exceptions that are
converted to a logged message and a process exit code by the CLI
exception handler in main.py.

Usage:
    from ucs_hybrid.exceptions import SchemaError, DataParseError

    # In services:
    raise SchemaError("missing column", column="CA")
    raise DataParseError("not a number", row=12, column="CA")
"""
from typing import Optional


class UCSHybridError(Exception):
    """
    Base exception for all toolkit errors.

    All custom exceptions inherit from this class.

    Attributes:
        exit_code: Process exit code returned by the CLI (default: 1).
        message: Human-readable error message.
    """
    exit_code: int = 1

    def __init__(self, message: str = "An unexpected error occurred"):
        self.message = message
        super().__init__(self.message)

    def __str__(self) -> str:
        return self.message

    def __reduce__(self):
        # Subclass __init__ signatures differ; rebuild from the formatted
        # message and attributes so errors cross process boundaries.
        return _restore_error, (type(self), self.message, self.__dict__.copy())


def _restore_error(cls, message: str, state: dict) -> UCSHybridError:
    error = cls.__new__(cls)
    Exception.__init__(error, message)
    error.__dict__.update(state)
    return error


class ValidationError(UCSHybridError):
    """
    Invalid input, configuration or argument (exit code 2).

    Examples:
        raise ValidationError("must be in (0, 1]", field="train_fraction")
        raise ValidationError("at least two algorithms are required")
    """
    exit_code = 2

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class SchemaError(ValidationError):
    """Missing, duplicate or unknown CSV column."""

    def __init__(self, message: str, column: Optional[str] = None):
        self.column = column
        super().__init__(message, field=column)


class DataParseError(ValidationError):
    """
    A cell could not be read as a finite number.

    Examples:
        raise DataParseError("not a number: 'abc'", row=3, column="CA")
    """

    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        self.row = row
        self.column = column
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column:
            location.append(f"column {column}")
        if location:
            message = f"{', '.join(location)}: {message}"
        super().__init__(message)


class DataValidationError(DataParseError):
    """A parsed value violates a domain rule (e.g. UCS <= 0)."""


class InsufficientDataError(ValidationError):
    """Too few records for the requested operation."""

    def __init__(self, required: int, available: int, operation: str = "operation"):
        self.required = required
        self.available = available
        super().__init__(f"{operation} needs at least {required} records, got {available}")


class DegenerateFeatureError(ValidationError):
    """A feature has max == min on the data a scaler is fit on."""

    def __init__(self, feature: str):
        self.feature = feature
        super().__init__("feature is constant (max == min), cannot be scaled", field=feature)


class DimensionError(ValidationError):
    """Vector or matrix has the wrong length/shape."""

    def __init__(self, message: str, expected: Optional[int] = None, actual: Optional[int] = None):
        self.expected = expected
        self.actual = actual
        if expected is not None:
            message = f"{message} (expected {expected}, got {actual})"
        super().__init__(message)


class UndefinedMetricError(UCSHybridError):
    """
    A metric is mathematically undefined for the given vectors.

    Use for zero expected values (MAPE) or zero variance (Pearson R).
    """
    exit_code = 3

    def __init__(self, message: str, phase: Optional[str] = None):
        self.phase = phase
        if phase:
            message = f"{phase} phase: {message}"
        super().__init__(message)


class ObjectiveEvaluationError(UCSHybridError):
    """The cost function raised or returned a non-finite value."""
    exit_code = 4

    def __init__(self, message: str, iteration: Optional[int] = None):
        self.iteration = iteration
        if iteration is not None:
            message = f"iteration {iteration}: {message}"
        super().__init__(message)


class TrainingError(UCSHybridError):
    """A hybrid could not be trained; wraps the underlying error."""
    exit_code = 4

    def __init__(
        self,
        message: str,
        algorithm: Optional[str] = None,
        population_size: Optional[int] = None,
    ):
        self.algorithm = algorithm
        self.population_size = population_size
        tags = []
        if algorithm:
            tags.append(algorithm.upper())
        if population_size is not None:
            tags.append(f"S_P={population_size}")
        if tags:
            message = f"[{' '.join(tags)}] {message}"
        super().__init__(message)


class ResourceNotFoundError(UCSHybridError):
    """
    Requested file does not exist (exit code 5).

    Examples:
        raise ResourceNotFoundError("Dataset", "data/concrete.csv")
        raise ResourceNotFoundError("Model file", path)
    """
    exit_code = 5

    def __init__(
        self,
        resource_type: str,
        resource_id: Optional[str] = None,
        message: Optional[str] = None,
    ):
        self.resource_type = resource_type
        self.resource_id = resource_id

        if message:
            super().__init__(message)
        elif resource_id:
            super().__init__(f"{resource_type} not found: {resource_id}")
        else:
            super().__init__(f"{resource_type} not found")
