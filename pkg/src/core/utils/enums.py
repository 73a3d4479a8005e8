"""
Shared Enumerations for cat0-collapse

This module contains all enums used across the system to ensure
consistency in serialization and reporting.
"""

from enum import Enum


class CollapseStrategy(Enum):
    """Order in which free pairs are consumed."""
    GREEDY_LEX = "greedy_lex"
    PREFER_3_SIMPLICES = "prefer_3_simplices"


class Verdict(Enum):
    """Outcome of a verification check."""
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"

    @classmethod
    def worst(cls, *verdicts: "Verdict") -> "Verdict":
        """Combine verdicts: any fail wins, then inconclusive, then pass."""
        if any(v is cls.FAIL for v in verdicts):
            return cls.FAIL
        if any(v is cls.INCONCLUSIVE for v in verdicts):
            return cls.INCONCLUSIVE
        return cls.PASS


class EngineOutcome(Enum):
    """How a collapse run ended."""
    COLLAPSED_TO_POINT = "collapsed_to_point"
    STUCK_NO_FREE_FACE = "stuck_no_free_face"
    VERIFICATION_FAILED = "verification_failed"


class RerouteChannel(Enum):
    """Which surviving boundary edges of a collapsed tetrahedron a reroute uses."""
    THROUGH_S = "through_s"
    THROUGH_T_V = "through_t_v"


class AleksandrovCase(Enum):
    """Sign of the angle sum at the bend point minus pi."""
    LESS_PI = "less_pi"
    EQUAL_PI = "equal_pi"
    GREATER_PI = "greater_pi"


class Direction(Enum):
    """Direction of a measured comparison, rebuilt value against original."""
    LESS = "<"
    EQUAL = "="
    GREATER = ">"


class Stratum(Enum):
    """Which sides of a sampled triangle crossed the collapsed tetrahedron, and how."""
    NO_CROSSING = "no_crossing"
    SINGLE_DIRECT = "single_direct"
    SINGLE_DETOUR = "single_detour"
    DOUBLE_SHARED_DIRECT = "double_shared_direct"
    DOUBLE_SPLIT_DIRECT = "double_split_direct"
    DOUBLE_SHARED_MIXED = "double_shared_mixed"
    DOUBLE_SPLIT_MIXED = "double_split_mixed"
    DOUBLE_DETOUR = "double_detour"
    TRIPLE = "triple"
