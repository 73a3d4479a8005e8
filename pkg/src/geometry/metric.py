"""
Piecewise-Euclidean metrics: one positive length per edge.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..core.config import Tolerances, get_tolerances
from ..core.exceptions import InvalidMetricError
from ..topology import SimplexId, SimplicialComplex
from .realization import realize_squared

logger = logging.getLogger("cat0.geometry")

STANDARD_LENGTH = 1.0


class MetricAssignment:
    """Edge lengths of a simplicial complex.

    Immutable. Lookups accept edges in any vertex order. Realizations of
    simplices are cached per instance.
    """

    __slots__ = ('_lengths', '_hash', '__weakref__')

    def __init__(self, lengths: Mapping[SimplexId, float]):
        clean: Dict[SimplexId, float] = {}
        for edge, value in lengths.items():
            if edge.dimension != 1:
                raise InvalidMetricError(f"{edge} is not an edge", simplex=edge.to_list())
            value = float(value)
            if not np.isfinite(value) or value <= 0:
                raise InvalidMetricError(
                    f"Edge {edge} needs a positive length, got {value}",
                    simplex=edge.to_list(),
                    lengths=[value],
                )
            clean[edge] = value
        self._lengths = clean
        self._hash = hash(frozenset(clean.items()))

    @classmethod
    def standard(cls, K: SimplicialComplex) -> 'MetricAssignment':
        """Every edge of K has length 1."""
        return cls({e: STANDARD_LENGTH for e in K.simplices_of_dim(1)})

    @classmethod
    def from_pairs(cls, pairs: Mapping[Tuple[str, str], float]) -> 'MetricAssignment':
        return cls({SimplexId.of(u, v): value for (u, v), value in pairs.items()})

    # =======================================================================
    # Lookups
    # =======================================================================

    def __len__(self) -> int:
        return len(self._lengths)

    def __iter__(self) -> Iterator[SimplexId]:
        return iter(sorted(self._lengths))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetricAssignment):
            return NotImplemented
        return self._lengths == other._lengths

    def __hash__(self) -> int:
        return self._hash

    def items(self) -> Iterable[Tuple[SimplexId, float]]:
        return sorted(self._lengths.items())

    def length(self, u: str, v: str) -> float:
        """Length of edge (u, v); zero when u == v."""
        if u == v:
            return 0.0
        edge = SimplexId.of(u, v)
        try:
            return self._lengths[edge]
        except KeyError:
            raise InvalidMetricError(f"No length for edge {edge}", simplex=edge.to_list()) from None

    def squared_matrix(self, vertices: Sequence[str]) -> np.ndarray:
        """Squared distance matrix among the given vertices, in the given order."""
        n = len(vertices)
        matrix = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                value = self.length(vertices[i], vertices[j]) ** 2
                matrix[i, j] = matrix[j, i] = value
        return matrix

    def realize(self, simplex: SimplexId) -> np.ndarray:
        """Canonical coordinates of a simplex (rows follow simplex.vertices)."""
        return _realize_cached(self, simplex)

    def diameter(self, simplex: SimplexId) -> float:
        """Longest edge of a simplex (0 for a vertex)."""
        edges = simplex.edges()
        return max((self._lengths[e] for e in edges), default=0.0)

    def restrict(self, K: SimplicialComplex) -> 'MetricAssignment':
        return MetricAssignment({e: self._lengths[e] for e in K.simplices_of_dim(1)})

    # =======================================================================
    # Validation
    # =======================================================================

    def validate(self, K: SimplicialComplex, tolerances: Optional[Tolerances] = None) -> None:
        """
        Check that the metric fits K and realizes every simplex.

        Raises:
            InvalidMetricError: naming the first offending edge or simplex
        """
        tolerances = tolerances or get_tolerances()
        edges = set(K.simplices_of_dim(1))
        for edge in sorted(edges):
            if edge not in self._lengths:
                raise InvalidMetricError(f"Missing length for edge {edge}", simplex=edge.to_list())
        extra = sorted(set(self._lengths) - edges)
        if extra:
            raise InvalidMetricError(
                f"Length given for edge {extra[0]} which is not in the complex",
                simplex=extra[0].to_list(),
            )
        for triangle in K.simplices_of_dim(2):
            a, b, c = triangle.vertices
            sides = sorted((self.length(a, b), self.length(b, c), self.length(a, c)))
            if sides[0] + sides[1] - sides[2] <= tolerances.planar * sides[2]:
                raise InvalidMetricError(
                    f"Triangle {triangle} violates the strict triangle inequality",
                    simplex=triangle.to_list(),
                    lengths=sides,
                )
        for tetrahedron in K.simplices_of_dim(3):
            self.realize(tetrahedron)
        logger.debug(f"Metric validated on {K!r}")


@lru_cache(maxsize=4096)
def _realize_cached(metric: MetricAssignment, simplex: SimplexId) -> np.ndarray:
    coords = realize_squared(metric.squared_matrix(simplex.vertices), simplex=simplex.vertices)
    coords.setflags(write=False)
    return coords


def chord_length(metric: MetricAssignment, vertices: Sequence[str],
                 x: np.ndarray, y: np.ndarray) -> float:
    """
    Euclidean distance between two barycentric points of one simplex.

    |x - y|² = -½ δᵀ D δ with δ = x - y and D the squared edge-length matrix,
    so no realization is needed.

    Args:
        metric: Edge lengths
        vertices: Vertices of the common simplex, in coordinate order
        x, y: Barycentric coordinates over `vertices`
    """
    delta = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    squared = metric.squared_matrix(vertices)
    value = -0.5 * float(delta @ squared @ delta)
    return float(np.sqrt(max(value, 0.0)))
