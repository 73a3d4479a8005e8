"""
Logging utilities for cat0-collapse.
Provides structured logging with optional rotation.
"""

import logging
import logging.handlers
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

from ..config import get_config


class StructuredLogFormatter(logging.Formatter):
    """Custom formatter that includes structured data."""

    def format(self, record):
        record.iso_timestamp = datetime.now(timezone.utc).isoformat()

        if not hasattr(record, 'run_id'):
            record.run_id = 'N/A'

        return super().format(record)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger in the cat0 hierarchy.

    Args:
        name: Logger name; prefixed with 'cat0.' unless it already is

    Returns:
        Logger instance
    """
    if name != 'cat0' and not name.startswith('cat0.'):
        name = f'cat0.{name}'
    return logging.getLogger(name)


def setup_logging(
    log_file: Optional[str] = None,
    level: Optional[str] = None,
    component: Optional[str] = None,
    enable_console: bool = True,
) -> logging.Logger:
    """
    Setup logging for a component.

    Handlers are attached to the 'cat0' logger so every module logger
    propagates to them. Console output goes to stderr; report documents
    are written separately and never contain log lines.

    Args:
        log_file: Path to log file (if None, uses the component entry of the config)
        level: Logging level (if None, uses the config default)
        component: Component name for the default log file
        enable_console: Whether to also log to the console

    Returns:
        Logger instance
    """
    config = get_config()

    log_level = getattr(logging, (level or config.log_level).upper(), logging.WARNING)

    log_format = config.get('logging.format',
                            '%(asctime)s - [%(name)s] - %(levelname)s - %(message)s')

    logger = logging.getLogger('cat0')
    logger.setLevel(log_level)

    # Clear existing handlers to avoid duplicates
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = StructuredLogFormatter(log_format)

    if not log_file and component:
        log_file = config.log_file(component)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        max_bytes = config.get('logging.file_rotation.max_bytes', 1048576)
        backup_count = config.get('logging.file_rotation.backup_count', 3)

        file_handler = logging.handlers.RotatingFileHandler(
            log_path,
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding='utf-8',
        )
        file_handler.setFormatter(formatter)
        file_handler.setLevel(log_level)
        logger.addHandler(file_handler)

    if enable_console:
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        console_handler.setLevel(log_level)
        logger.addHandler(console_handler)

    return logger


class RunLogAdapter(logging.LoggerAdapter):
    """Adapter that automatically includes the run id in all logs."""

    def __init__(self, logger: logging.Logger, run_id: str):
        super().__init__(logger, {'run_id': run_id})

    def process(self, msg, kwargs):
        extra = dict(kwargs.get('extra') or {})
        extra.setdefault('run_id', self.extra['run_id'])
        kwargs['extra'] = extra
        return msg, kwargs


def get_run_logger(component: str, run_id: str) -> RunLogAdapter:
    """
    Get a logger that automatically includes a run id.

    Args:
        component: Component name
        run_id: Run identifier (derived from command and seed, so reruns match)

    Returns:
        Logger adapter with run context
    """
    return RunLogAdapter(get_logger(component), run_id)


def log_check_failure(
    logger: logging.Logger,
    check: str,
    verdict: str,
    worst_violation: float,
    witness: Optional[Dict[str, Any]] = None,
):
    """
    Log a failed or inconclusive verification check with full context.

    Args:
        logger: Logger instance
        check: Check name (edge_link, cat0_triangle, four_point, property_a, homology)
        verdict: Verdict value
        worst_violation: Worst violation the check measured
        witness: Serialized witness, when the check produced one
    """
    extra = {
        'event_type': 'check_failure',
        'check': check,
        'verdict': verdict,
        'worst_violation': worst_violation,
    }
    logger.warning(
        f"CHECK {verdict.upper()}: {check} - worst violation {worst_violation:.3e}"
        + (f", witness: {witness}" if witness else ""),
        extra=extra,
    )
