"""
Utilities for cat0-collapse.
"""

from .enums import (
    AleksandrovCase,
    CollapseStrategy,
    Direction,
    EngineOutcome,
    RerouteChannel,
    Stratum,
    Verdict,
)
from .parallel import derive_rng, ordered_map, serial_minimize, step_seed

__all__ = [
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
    'serial_minimize',
    'step_seed',
]
