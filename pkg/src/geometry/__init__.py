"""
Metric geometry: realizations of metric simplices and flat comparison geometry.
"""

from .angles import AngleEstimate, alexandrov_angle_estimate
from .comparison import (
    AleksandrovResult,
    Comparison,
    ComparisonTriangle,
    aleksandrov_lemma,
    comparison_angle,
    cross2,
    planar_angle,
    triangle_curvature,
)
from .metric import STANDARD_LENGTH, MetricAssignment, chord_length
from .realization import (
    cayley_menger_determinant,
    realize_squared,
    realize_tetrahedron,
    realize_triangle,
    simplex_volume_squared,
    tetrahedron_volume,
)
from .subembedding import FourTuple, SubembeddingResult, subembedding_check

__all__ = [
    'MetricAssignment',
    'STANDARD_LENGTH',
    'chord_length',
    'cayley_menger_determinant',
    'simplex_volume_squared',
    'realize_squared',
    'realize_triangle',
    'realize_tetrahedron',
    'tetrahedron_volume',
    'comparison_angle',
    'triangle_curvature',
    'planar_angle',
    'cross2',
    'ComparisonTriangle',
    'Comparison',
    'AleksandrovResult',
    'aleksandrov_lemma',
    'FourTuple',
    'SubembeddingResult',
    'subembedding_check',
    'AngleEstimate',
    'alexandrov_angle_estimate',
]
