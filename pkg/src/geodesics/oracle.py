"""
Brute-force shortest paths over a fine subdivision graph.

Every edge of the complex is cut into `resolution` + 1 pieces; subdivision
points are joined by straight chords across each triangle of the maximal
simplices and, inside each tetrahedron, between its three pairs of opposite
edges. The two query points are joined to every subdivision point of the
simplices containing them. Used only to cross-check reroutes.
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core.config import get_config
from ..geometry import MetricAssignment
from ..topology import SimplexId, SimplicialComplex
from .graph import EdgeList, chord_cross, shortest_route
from .points import PiecewisePath, SimplexPoint, union_vertices

logger = logging.getLogger("cat0.geodesics")


def _edge_nodes(e: SimplexId, resolution: int) -> List[SimplexPoint]:
    u, v = e.vertices
    return [SimplexPoint.on_edge(u, v, i / (resolution + 1)) for i in range(1, resolution + 1)]


def _opposite_edges(tetrahedron: SimplexId) -> List[Tuple[SimplexId, SimplexId]]:
    a, b, c, d = tetrahedron.vertices
    return [(SimplexId.of(a, b), SimplexId.of(c, d)),
            (SimplexId.of(a, c), SimplexId.of(b, d)),
            (SimplexId.of(a, d), SimplexId.of(b, c))]


def _join(edges: EdgeList, metric: MetricAssignment, simplex: SimplexId,
          nodes: List[SimplexPoint], first: List[int], second: List[int]) -> None:
    """Chords from every node of `first` to every node of `second` through `simplex`."""
    block = chord_cross(metric, simplex, [nodes[k] for k in first], [nodes[k] for k in second])
    rows, cols = np.meshgrid(first, second, indexing='ij')
    edges.add(rows.ravel(), cols.ravel(), block.ravel())


def brute_force_path(K: SimplicialComplex, metric: MetricAssignment, p: SimplexPoint,
                     q: SimplexPoint, resolution: Optional[int] = None) -> PiecewisePath:
    """
    Shortest path from p to q in the subdivision graph.

    Args:
        K: Complex whose surviving simplices carry the paths
        metric: Edge lengths
        p, q: Query points
        resolution: Interior subdivision points per edge (config default 200)

    Raises:
        GeodesicError: if p and q are not connected in the graph
    """
    resolution = resolution if resolution is not None else get_config().oracle_resolution
    nodes: List[SimplexPoint] = [SimplexPoint.vertex(v) for v in K.vertices]
    vertex_index = {v: i for i, v in enumerate(K.vertices)}
    edge_index: Dict[SimplexId, List[int]] = {}
    for e in K.simplices_of_dim(1):
        start = len(nodes)
        nodes.extend(_edge_nodes(e, resolution))
        u, v = e.vertices
        edge_index[e] = [vertex_index[u]] + list(range(start, len(nodes))) + [vertex_index[v]]

    maximal = K.maximal_simplices()
    triangles = sorted({t for m in maximal for t in [m, *m.faces()] if t.dimension == 2})
    edges = EdgeList()
    for e, members in edge_index.items():
        steps = np.full(len(members) - 1, metric.length(*e.vertices) / (resolution + 1))
        edges.add(members[:-1], members[1:], steps)
    for triangle in triangles:
        sides = triangle.edges()
        for i in range(3):
            for j in range(i + 1, 3):
                _join(edges, metric, triangle, nodes, edge_index[sides[i]], edge_index[sides[j]])
    for tetrahedron in (m for m in maximal if m.dimension == 3):
        for first, second in _opposite_edges(tetrahedron):
            _join(edges, metric, tetrahedron, nodes, edge_index[first], edge_index[second])

    n = len(nodes)
    source, target = n, n + 1
    for index, point in ((source, p), (target, q)):
        span = set(union_vertices(point))
        for simplex in maximal:
            if not span <= set(simplex.vertices):
                continue
            members = sorted({k for e in simplex.edges() for k in edge_index[e]}
                             | {vertex_index[v] for v in simplex.vertices})
            weights = chord_cross(metric, simplex, [point], [nodes[k] for k in members])[0]
            edges.add(np.full(len(members), index), members, weights)
    span = set(union_vertices(p, q))
    shared = [m for m in maximal if span <= set(m.vertices)]
    if shared:
        edges.add([source], [target], chord_cross(metric, shared[0], [p], [q])[0])

    distance, route = shortest_route(edges, n + 2, source, target)
    points = {source: p, target: q}
    path = PiecewisePath.through(metric, [points[i] if i in points else nodes[i] for i in route])
    logger.debug(f"Oracle distance {distance:.12g} at resolution {resolution}")
    return path


def brute_force_distance(K: SimplicialComplex, metric: MetricAssignment, p: SimplexPoint,
                         q: SimplexPoint, resolution: Optional[int] = None) -> float:
    return brute_force_path(K, metric, p, q, resolution).length
