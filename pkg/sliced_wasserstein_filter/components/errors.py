from typing import Any


class SlicedWassersteinError(Exception):
    """
    Base error for the package.

    Args:
        message: Human readable explanation
        **details: Structured context (offending row, flag name, sizes, ...)
    """

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": self.message, **self.details}


class ConfigError(SlicedWassersteinError, ValueError):
    """Invalid hyperparameters or command-line usage"""


class ShapeError(SlicedWassersteinError, ValueError):
    """Dimension or size mismatch between arrays, or a non-unit direction"""


class DataError(SlicedWassersteinError, ValueError):
    """Data that cannot be filtered or evaluated (NaN/Inf, too few rows, missing labels)"""


class SchemaError(DataError):
    """A CSV file lacks columns required by a schema"""
