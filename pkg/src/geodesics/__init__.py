"""
Points, paths and geodesics in metric simplicial complexes, and the reroutes
that replace geodesics through a collapsed tetrahedron.
"""

from .balance import (
    BalancePoint,
    DetourCheck,
    ExtendedAngleResult,
    HingeMinimum,
    NoInteriorCrossing,
    balance_point_bisection,
    balance_point_closed_form,
    detour_inequality_check,
    distance_to_edge_point,
    extended_angle_check,
    hinge_minimizer,
)
from .midpoint import ResolutionExhausted, path_avoids, safe_midpoint
from .oracle import brute_force_distance, brute_force_path
from .points import (
    PiecewisePath,
    SimplexPoint,
    interpolate,
    path_length,
    segment_hits_interior,
    segment_length,
    union_vertices,
)
from .reroute import (
    CollapseGeometry,
    Crossing,
    RerouteResult,
    detect_crossing,
    reroute_after_collapse,
)
from .solver import GeodesicSolver, geodesic_midpoint
from .unfolding import Unfolding, develop, unfold_fan

__all__ = [
    # Points and paths
    'SimplexPoint',
    'PiecewisePath',
    'interpolate',
    'path_length',
    'segment_length',
    'segment_hits_interior',
    'union_vertices',

    # Unfolding
    'Unfolding',
    'develop',
    'unfold_fan',

    # Balance points
    'BalancePoint',
    'NoInteriorCrossing',
    'HingeMinimum',
    'DetourCheck',
    'ExtendedAngleResult',
    'balance_point_closed_form',
    'balance_point_bisection',
    'hinge_minimizer',
    'distance_to_edge_point',
    'detour_inequality_check',
    'extended_angle_check',

    # Geodesics
    'GeodesicSolver',
    'geodesic_midpoint',
    'brute_force_path',
    'brute_force_distance',
    'ResolutionExhausted',
    'safe_midpoint',
    'path_avoids',

    # Reroutes
    'CollapseGeometry',
    'Crossing',
    'RerouteResult',
    'detect_crossing',
    'reroute_after_collapse',
]
