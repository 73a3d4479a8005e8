"""
Weighted chord graphs over sample points of a complex, searched with Dijkstra.
"""

from typing import List, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra
from scipy.spatial.distance import cdist

from ..core.exceptions import GeodesicError
from ..geometry import MetricAssignment
from ..topology import SimplexId
from .points import SimplexPoint

MIN_WEIGHT = 1e-300


class EdgeList:
    """Undirected weighted edges accumulated in arrays; parallel edges keep the lightest."""

    def __init__(self):
        self._rows: List[np.ndarray] = []
        self._cols: List[np.ndarray] = []
        self._weights: List[np.ndarray] = []

    def add(self, rows, cols, weights) -> None:
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        weights = np.asarray(weights, dtype=float)
        keep = rows != cols
        lo = np.minimum(rows[keep], cols[keep])
        hi = np.maximum(rows[keep], cols[keep])
        self._rows.append(lo)
        self._cols.append(hi)
        self._weights.append(np.maximum(weights[keep], MIN_WEIGHT))

    def without(self, nodes: Sequence[int]) -> 'EdgeList':
        """Copy with every edge touching one of `nodes` removed."""
        rows, cols, weights = self.arrays()
        drop = np.isin(rows, list(nodes)) | np.isin(cols, list(nodes))
        kept = EdgeList()
        kept.add(rows[~drop], cols[~drop], weights[~drop])
        return kept

    def extend(self, other: 'EdgeList') -> None:
        self._rows.extend(other._rows)
        self._cols.extend(other._cols)
        self._weights.extend(other._weights)

    def arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not self._rows:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty.copy(), np.zeros(0)
        rows = np.concatenate(self._rows)
        cols = np.concatenate(self._cols)
        weights = np.concatenate(self._weights)
        order = np.lexsort((weights, cols, rows))
        rows, cols, weights = rows[order], cols[order], weights[order]
        first = np.ones(len(rows), dtype=bool)
        first[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
        return rows[first], cols[first], weights[first]

    def matrix(self, size: int):
        rows, cols, weights = self.arrays()
        return coo_matrix((weights, (rows, cols)), shape=(size, size)).tocsr()


def chord_block(metric: MetricAssignment, simplex: SimplexId,
                points: Sequence[SimplexPoint]) -> np.ndarray:
    """Pairwise Euclidean distances of points lying in one closed simplex."""
    coords = metric.realize(simplex)
    weights = np.array([p.coords_in(simplex.vertices) for p in points])
    positions = weights @ coords if coords.shape[1] else np.zeros((len(points), 1))
    return cdist(positions, positions)


def chord_cross(metric: MetricAssignment, simplex: SimplexId, first: Sequence[SimplexPoint],
                second: Sequence[SimplexPoint]) -> np.ndarray:
    """Distances from every point of `first` to every point of `second`, all in one simplex."""
    coords = metric.realize(simplex)
    if not coords.shape[1]:
        return np.zeros((len(first), len(second)))
    a = np.array([p.coords_in(simplex.vertices) for p in first]) @ coords
    b = np.array([p.coords_in(simplex.vertices) for p in second]) @ coords
    return cdist(a, b)


def shortest_route(edges: EdgeList, size: int, source: int, target: int) -> Tuple[float, List[int]]:
    """
    Dijkstra from source to target.

    Returns:
        (distance, node indices from source to target)

    Raises:
        GeodesicError: if the target is unreachable
    """
    graph = edges.matrix(size)
    distances, predecessors = dijkstra(graph, directed=False, indices=source,
                                       return_predecessors=True)
    if not np.isfinite(distances[target]):
        raise GeodesicError("Points lie in different components of the neighborhood")
    route = [target]
    while route[-1] != source:
        route.append(int(predecessors[route[-1]]))
    return float(distances[target]), route[::-1]
