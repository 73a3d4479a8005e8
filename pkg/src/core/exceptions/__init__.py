"""
Exceptions for cat0-collapse.
"""

from .exceptions import (
    Cat0Error,
    ConfigurationError,
    CrossingError,
    DegenerateInputError,
    DegenerateSimplexError,
    DocumentSyntaxError,
    DomainError,
    FanError,
    GeodesicError,
    InvalidMetricError,
    MalformedInputError,
    NoInteriorCrossingError,
    PreconditionError,
)

__all__ = [
    'Cat0Error',
    'ConfigurationError',
    'CrossingError',
    'DegenerateInputError',
    'DegenerateSimplexError',
    'DocumentSyntaxError',
    'DomainError',
    'FanError',
    'GeodesicError',
    'InvalidMetricError',
    'MalformedInputError',
    'NoInteriorCrossingError',
    'PreconditionError',
]
