"""
Logging utilities for cat0-collapse.
"""

from .logger import (
    RunLogAdapter,
    StructuredLogFormatter,
    get_logger,
    get_run_logger,
    log_check_failure,
    setup_logging,
)

__all__ = [
    'setup_logging',
    'log_check_failure',
    'get_logger',
    'get_run_logger',
    'RunLogAdapter',
    'StructuredLogFormatter',
]
