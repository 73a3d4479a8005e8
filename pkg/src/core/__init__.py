"""
Core module for cat0-collapse.

This module provides shared functionality used by all components:
- Configuration management and the tolerance record
- Logging setup
- Exceptions
- Enumerations and deterministic sampling helpers
"""

from .config import Config, Tolerances, get_config
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
from .logging import get_logger, log_check_failure, setup_logging
from .utils import (
    AleksandrovCase,
    CollapseStrategy,
    Direction,
    EngineOutcome,
    RerouteChannel,
    Stratum,
    Verdict,
    derive_rng,
    ordered_map,
)

__version__ = "0.1.0"

__all__ = [
    # Configuration
    'get_config',
    'Config',
    'Tolerances',

    # Logging
    'setup_logging',
    'get_logger',
    'log_check_failure',

    # Enums
    'AleksandrovCase',
    'CollapseStrategy',
    'Direction',
    'EngineOutcome',
    'RerouteChannel',
    'Stratum',
    'Verdict',

    # Sampling
    'derive_rng',
    'ordered_map',

    # Exceptions
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
