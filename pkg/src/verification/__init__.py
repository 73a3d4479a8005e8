"""
Structural and sampled verification of nonpositive curvature, and the
Property A detector for tetrahedron collapses.
"""

from .four_point import four_point_sample_check
from .homology import betti_numbers, gf2_rank, homology_necessary_check
from .link import dihedral_angle, edge_link_check, is_cycle
from .property_a import property_a_check
from .reports import CheckReport, NeighborhoodSpec, combine_reports
from .triangles import cat0_triangle_sample_check, flat_curvature

__all__ = [
    'CheckReport',
    'NeighborhoodSpec',
    'combine_reports',
    'edge_link_check',
    'dihedral_angle',
    'is_cycle',
    'homology_necessary_check',
    'betti_numbers',
    'gf2_rank',
    'cat0_triangle_sample_check',
    'flat_curvature',
    'four_point_sample_check',
    'property_a_check',
]
