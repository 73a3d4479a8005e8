"""
Collapse engine: verified collapse of metric 3-complexes to a point.
"""

from .engine import DEPARTURE_NOTE, EngineConfig, VerifiedTrace, run, spine

__all__ = ['EngineConfig', 'VerifiedTrace', 'run', 'spine', 'DEPARTURE_NOTE']
