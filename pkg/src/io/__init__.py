"""
Complex documents, report emission and the command line.
"""

from .cli import cli_dispatch, main
from .document import (
    FORMAT_VERSION,
    ComplexDocument,
    emit_document,
    load_document,
    parse_complex,
    read_document,
)
from .report import dump_yaml, emit_report

__all__ = [
    'FORMAT_VERSION',
    'ComplexDocument',
    'parse_complex',
    'load_document',
    'read_document',
    'emit_document',
    'emit_report',
    'dump_yaml',
    'cli_dispatch',
    'main',
]
