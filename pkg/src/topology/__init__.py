"""
Combinatorial simplicial complexes: faces, free faces and collapses.
"""

from .collapse import CollapseTrace, NoFreeFace, choose_pair, collapse_sequence
from .complex import (
    FreeFacePair,
    SimplicialComplex,
    build_complex,
    elementary_collapse,
    free_faces,
    is_free,
)
from .simplex import SimplexId, closure, edge

__all__ = [
    'SimplexId',
    'SimplicialComplex',
    'FreeFacePair',
    'CollapseTrace',
    'NoFreeFace',
    'build_complex',
    'free_faces',
    'is_free',
    'elementary_collapse',
    'collapse_sequence',
    'choose_pair',
    'closure',
    'edge',
]
