"""
Shortest paths between points of a (star) neighborhood.

A seeding graph over vertices, edge points and lattice points of triangles
that bound tetrahedra is searched with Dijkstra. The resulting polyline fixes
a sequence of maximal simplices; the exact shortest path through that
sequence is then found by convex minimization, with every breakpoint confined
to the common face of its two simplices.

Relaxation never changes the simplex sequence, so a path that bends at a
vertex stays there even when a route around the vertex is shorter. Every
vertex left inside a relaxed path is therefore removed from the graph in
turn and the search repeated; the shorter of the two paths is kept.
"""

import logging
import threading
from dataclasses import dataclass
from itertools import product
from typing import AbstractSet, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import Tolerances, get_config
from ..core.exceptions import GeodesicError
from ..core.utils import serial_minimize
from ..geometry import MetricAssignment
from ..topology import SimplexId, SimplicialComplex
from .graph import EdgeList, chord_block, chord_cross, shortest_route
from .points import PiecewisePath, SimplexPoint, union_vertices

logger = logging.getLogger("cat0.geodesics")


@dataclass
class _Breakpoint:
    face: Tuple[str, ...]
    left: np.ndarray      # face vertex coordinates in the simplex before the breakpoint
    right: np.ndarray     # ... and in the simplex after it
    offset: int           # index of the first free parameter
    size: int             # number of free parameters (face dimension)


class GeodesicSolver:
    """Geodesics in a metric complex, usually the closed star of a vertex.

    Example:
        solver = GeodesicSolver(K.closed_star(SimplexId.of('a')), metric)
        path = solver.geodesic(p, q)
    """

    def __init__(self, K: SimplicialComplex, metric: MetricAssignment,
                 edge_resolution: Optional[int] = None, face_resolution: Optional[int] = None,
                 tolerances: Optional[Tolerances] = None):
        config = get_config()
        self.K = K
        self.metric = metric
        self.edge_resolution = edge_resolution if edge_resolution is not None \
            else config.edge_resolution
        self.face_resolution = face_resolution if face_resolution is not None \
            else config.face_resolution
        self.tolerances = tolerances or Tolerances.from_config(config)
        self._maximal = K.maximal_simplices()
        self._nodes: List[SimplexPoint] = []
        self._by_carrier: Dict[SimplexId, List[int]] = {}
        self._edges = EdgeList()
        self._cache: Dict[Tuple[SimplexPoint, SimplexPoint], PiecewisePath] = {}
        self._cache_lock = threading.Lock()
        self._vertex_nodes: Dict[str, int] = {}
        self._build()

    # =======================================================================
    # Seeding graph
    # =======================================================================

    def _add_node(self, point: SimplexPoint) -> None:
        self._by_carrier.setdefault(point.carrier(), []).append(len(self._nodes))
        self._nodes.append(point)

    def _build(self) -> None:
        for label in self.K.vertices:
            self._vertex_nodes[label] = len(self._nodes)
            self._add_node(SimplexPoint.vertex(label))
        k = self.edge_resolution
        for e in self.K.simplices_of_dim(1):
            u, v = e.vertices
            for i in range(1, k + 1):
                self._add_node(SimplexPoint.on_edge(u, v, i / (k + 1)))
        m = self.face_resolution
        for triangle in self.K.simplices_of_dim(2):
            if not any(c.dimension == 3 for c in self.K.cofaces(triangle)):
                continue
            for i, j in product(range(1, m), repeat=2):
                l = m - i - j
                if l >= 1:
                    self._add_node(SimplexPoint(triangle, (i / m, j / m, l / m)))
        for simplex in self._maximal:
            members = self._members(simplex)
            if len(members) < 2:
                continue
            block = chord_block(self.metric, simplex, [self._nodes[i] for i in members])
            rows, cols = np.triu_indices(len(members), k=1)
            index = np.asarray(members)
            self._edges.add(index[rows], index[cols], block[rows, cols])
        logger.debug(f"Seeding graph on {self.K!r}: {len(self._nodes)} nodes")

    def _members(self, simplex: SimplexId) -> List[int]:
        members = list(self._by_carrier.get(simplex, []))
        for face in simplex.faces():
            members.extend(self._by_carrier.get(face, []))
        return sorted(members)

    def maximal_containing(self, *points: SimplexPoint) -> List[SimplexId]:
        """Maximal simplices whose closure contains all the given points."""
        span = set(union_vertices(*points))
        return [m for m in self._maximal if span <= set(m.vertices)]

    # =======================================================================
    # Queries
    # =======================================================================

    def distance(self, x: SimplexPoint, y: SimplexPoint) -> float:
        return self.geodesic(x, y).length

    def geodesic(self, x: SimplexPoint, y: SimplexPoint) -> PiecewisePath:
        """
        Shortest path from x to y.

        Raises:
            GeodesicError: if a point is not in the complex or the points are not connected
        """
        key = (x, y)
        with self._cache_lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        for point in (x, y):
            if not self.maximal_containing(point):
                raise GeodesicError(f"Point {point} is not in the neighborhood",
                                    source=point.to_dict())
        if x.close_to(y, self.tolerances.barycentric):
            path = PiecewisePath.through(self.metric, [x])
        else:
            path = self._release(x, y, self._relax(self._seed(x, y)))
        with self._cache_lock:
            return self._cache.setdefault(key, path)

    def _inner_vertices(self, path: PiecewisePath) -> List[str]:
        return [p.simplex.vertices[0] for p in path.points[1:-1] if p.simplex.dimension == 0]

    def _release(self, x: SimplexPoint, y: SimplexPoint, path: PiecewisePath) -> PiecewisePath:
        """Reroute around vertices the path bends at, while that shortens it."""
        banned: set = set()
        while True:
            fresh = [v for v in self._inner_vertices(path) if v not in banned]
            if not fresh:
                return path
            banned.update(fresh)
            try:
                candidate = self._relax(self._seed(x, y, banned))
            except GeodesicError:
                return path
            if candidate.length >= path.length:
                return path
            logger.debug(f"Released {fresh} from {x} -> {y}: "
                         f"{path.length:.15g} -> {candidate.length:.15g}")
            path = candidate

    def _seed(self, x: SimplexPoint, y: SimplexPoint,
              banned: AbstractSet[str] = frozenset()) -> List[SimplexPoint]:
        n = len(self._nodes)
        source, target = n, n + 1
        blocked = {self._vertex_nodes[v] for v in banned}
        edges = EdgeList()
        edges.extend(self._edges.without(sorted(blocked)) if blocked else self._edges)
        for index, point in ((source, x), (target, y)):
            for simplex in self.maximal_containing(point):
                members = [i for i in self._members(simplex) if i not in blocked]
                if not members:
                    continue
                weights = chord_cross(self.metric, simplex, [point],
                                      [self._nodes[i] for i in members])[0]
                edges.add(np.full(len(members), index), members, weights)
        shared = self.maximal_containing(x, y)
        if shared:
            direct = chord_cross(self.metric, shared[0], [x], [y])[0, 0]
            edges.add([source], [target], [direct])
        _, route = shortest_route(edges, n + 2, source, target)
        points = {source: x, target: y}
        return [points[i] if i in points else self._nodes[i] for i in route]

    # =======================================================================
    # Relaxation
    # =======================================================================

    def _simplex_sequence(self, chain: Sequence[SimplexPoint]) -> List[SimplexId]:
        """One maximal simplex per segment, maximizing overlap between neighbours."""
        options = [self.maximal_containing(a, b) for a, b in zip(chain, chain[1:])]
        if any(not o for o in options):
            raise GeodesicError("Seed path leaves the complex")
        score = [[0] * len(o) for o in options]
        back = [[0] * len(o) for o in options]
        for j in range(1, len(options)):
            for i, current in enumerate(options[j]):
                best, arg = -1, 0
                for h, previous in enumerate(options[j - 1]):
                    value = score[j - 1][h] + len(current.intersection(previous))
                    if value > best:
                        best, arg = value, h
                score[j][i], back[j][i] = best, arg
        pick = int(np.argmax(score[-1]))
        sequence = [options[-1][pick]]
        for j in range(len(options) - 1, 0, -1):
            pick = back[j][pick]
            sequence.append(options[j - 1][pick])
        return sequence[::-1]

    def _relax(self, chain: List[SimplexPoint]) -> PiecewisePath:
        seeded = PiecewisePath.through(self.metric, chain)
        if len(chain) <= 2:
            return seeded
        sequence = self._simplex_sequence(chain)
        simplices = [sequence[0]]
        seeds = []
        for j in range(1, len(sequence)):
            if sequence[j] != simplices[-1]:
                simplices.append(sequence[j])
                seeds.append(chain[j])
        x, y = chain[0], chain[-1]
        if len(simplices) == 1:
            return PiecewisePath.through(self.metric, [x, y])

        breakpoints: List[_Breakpoint] = []
        start = []
        offset = 0
        for i, seed in enumerate(seeds):
            left, right = simplices[i], simplices[i + 1]
            face = left.intersection(right)
            left_coords = self.metric.realize(left)
            right_coords = self.metric.realize(right)
            rows_left = [left.vertices.index(v) for v in face]
            rows_right = [right.vertices.index(v) for v in face]
            size = len(face) - 1
            breakpoints.append(_Breakpoint(face, left_coords[rows_left], right_coords[rows_right],
                                           offset, size))
            start.extend(seed.coords_in(face)[1:])
            offset += size

        first = x.coords_in(simplices[0].vertices) @ self.metric.realize(simplices[0])
        last = y.coords_in(simplices[-1].vertices) @ self.metric.realize(simplices[-1])

        def positions(theta: np.ndarray):
            lefts, rights = [], []
            for bp in breakpoints:
                params = theta[bp.offset:bp.offset + bp.size]
                weights = np.concatenate(([1.0 - params.sum()], params))
                lefts.append(weights @ bp.left)
                rights.append(weights @ bp.right)
            return lefts, rights

        def objective(theta: np.ndarray):
            lefts, rights = positions(theta)
            starts = [first] + rights
            ends = lefts + [last]
            total = 0.0
            grad = np.zeros_like(theta)
            for j, (a, b) in enumerate(zip(starts, ends)):
                d = b - a
                norm = float(np.linalg.norm(d))
                total += norm
                if norm <= 1e-300:
                    continue
                unit = d / norm
                if j < len(breakpoints):
                    bp = breakpoints[j]
                    jac = (bp.left[1:] - bp.left[0]) @ unit
                    grad[bp.offset:bp.offset + bp.size] += jac
                if j > 0:
                    bp = breakpoints[j - 1]
                    jac = (bp.right[1:] - bp.right[0]) @ unit
                    grad[bp.offset:bp.offset + bp.size] -= jac
            return total, grad

        theta0 = np.clip(np.asarray(start, dtype=float), 0.0, 1.0)
        if offset:
            bounds = [(0.0, 1.0)] * offset
            triangles = [bp for bp in breakpoints if bp.size == 2]
            if triangles:
                constraints = [
                    {'type': 'ineq',
                     'fun': (lambda th, o=bp.offset: 1.0 - th[o] - th[o + 1]),
                     'jac': (lambda th, o=bp.offset, n=offset: _simplex_jac(o, n))}
                    for bp in triangles
                ]
                result = serial_minimize(objective, theta0, jac=True, method='SLSQP',
                                         bounds=bounds,
                                         constraints=constraints,
                                         options={'ftol': 1e-15, 'maxiter': 500})
            else:
                result = serial_minimize(objective, theta0, jac=True, method='L-BFGS-B',
                                         bounds=bounds,
                                         options={'ftol': 1e-15, 'gtol': 1e-12,
                                                  'maxiter': 500})
            theta = np.clip(np.asarray(result.x, dtype=float), 0.0, 1.0)
        else:
            theta = theta0

        points = [x]
        for bp in breakpoints:
            params = theta[bp.offset:bp.offset + bp.size]
            weights = np.concatenate(([max(1.0 - params.sum(), 0.0)], params))
            weights = weights / weights.sum()
            points.append(SimplexPoint.of(bp.face, weights).reduced())
        points.append(y)
        relaxed = PiecewisePath.through(self.metric, points)
        return relaxed if relaxed.length <= seeded.length else seeded


def _simplex_jac(offset: int, size: int) -> np.ndarray:
    jac = np.zeros(size)
    jac[offset] = jac[offset + 1] = -1.0
    return jac


def geodesic_midpoint(solver: GeodesicSolver, x: SimplexPoint, y: SimplexPoint) -> SimplexPoint:
    """Arclength midpoint of the geodesic from x to y."""
    return solver.geodesic(x, y).point_at(solver.metric, 0.5)
