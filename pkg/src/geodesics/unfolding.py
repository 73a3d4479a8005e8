"""
Planar development of edge-connected triangle fans.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import DegenerateSimplexError, FanError, InvalidMetricError
from ..geometry import MetricAssignment, cross2, realize_triangle
from ..topology import SimplexId, SimplicialComplex
from .points import SimplexPoint


@dataclass(frozen=True)
class Unfolding:
    """Planar placement of every triangle of a fan.

    `placements[i]` maps the vertices of `fan[i]` to planar points. A label
    may appear in several triangles at different places (a fan can wind
    around a vertex); consecutive triangles agree on their shared edge.
    """

    fan: Tuple[SimplexId, ...]
    placements: Tuple[Dict[str, np.ndarray], ...]

    def coords(self, label: str, position: int = -1) -> np.ndarray:
        """Planar point of a vertex, in the given triangle (last by default)."""
        if position < 0:
            position = len(self.fan) + position
        for index in range(position, -1, -1):
            if label in self.placements[index]:
                return self.placements[index][label]
        raise FanError(f"{label!r} is not a vertex of the fan up to position {position}",
                       position=position)

    def point(self, p: SimplexPoint, position: int) -> np.ndarray:
        """Planar image of a point lying in the closed triangle fan[position]."""
        triangle = self.fan[position]
        weights = p.coords_in(triangle.vertices)
        stacked = np.array([self.placements[position][v] for v in triangle.vertices])
        return weights @ stacked

    def edge(self, position: int) -> Tuple[str, str]:
        """Shared edge between fan[position] and fan[position + 1]."""
        shared = self.fan[position].intersection(self.fan[position + 1])
        return shared[0], shared[1]


def _third_point(p: np.ndarray, q: np.ndarray, dp: float, dq: float,
                 away_from: Optional[np.ndarray]) -> np.ndarray:
    """Point at distances dp, dq from p, q, on the side of line pq opposite `away_from`."""
    base = float(np.linalg.norm(q - p))
    axis = (q - p) / base
    normal = np.array([-axis[1], axis[0]])
    x = (dp * dp + base * base - dq * dq) / (2.0 * base)
    y = float(np.sqrt(max(dp * dp - x * x, 0.0)))
    candidate = p + x * axis + y * normal
    if away_from is not None and cross2(p, q, away_from) * cross2(p, q, candidate) > 0:
        candidate = p + x * axis - y * normal
    return candidate


def _check_triangle(metric: MetricAssignment, triangle: SimplexId) -> None:
    a, b, c = triangle.vertices
    try:
        realize_triangle(metric.length(a, b), metric.length(b, c), metric.length(c, a))
    except DegenerateSimplexError as exc:
        raise InvalidMetricError(f"Triangle {triangle} is degenerate",
                                 simplex=triangle.to_list()) from exc


def develop(metric: MetricAssignment, fan: Sequence[SimplexId]) -> Unfolding:
    """Unfold a fan using only the metric (membership in a complex is not checked)."""
    fan = tuple(fan)
    if not fan:
        raise FanError("A fan needs at least one triangle")
    for position, triangle in enumerate(fan):
        if triangle.dimension != 2:
            raise FanError(f"{triangle} is not a triangle", position=position,
                           triangles=[t.to_list() for t in fan])
        _check_triangle(metric, triangle)

    a, b, c = fan[0].vertices
    first = realize_triangle(metric.length(a, b), metric.length(b, c), metric.length(c, a))
    placements = [dict(zip((a, b, c), first))]
    for position in range(1, len(fan)):
        previous, current = fan[position - 1], fan[position]
        shared = previous.intersection(current)
        if len(shared) != 2:
            raise FanError(
                f"{previous} and {current} do not share exactly one edge",
                position=position,
                triangles=[t.to_list() for t in fan],
            )
        u, v = shared
        (old,) = [w for w in previous.vertices if w not in shared]
        (new,) = [w for w in current.vertices if w not in shared]
        pu, pv = placements[-1][u], placements[-1][v]
        point = _third_point(pu, pv, metric.length(u, new), metric.length(v, new),
                             away_from=placements[-1][old])
        placements.append({u: pu, v: pv, new: point})
    return Unfolding(fan=fan, placements=tuple(placements))


def unfold_fan(K: SimplicialComplex, metric: MetricAssignment,
               fan: Sequence[SimplexId]) -> Unfolding:
    """
    Develop an edge-connected triangle sequence into the plane.

    The first triangle is placed as realize_triangle places it; every next
    triangle is reflected across its shared edge into the half-plane away
    from the previous one.

    Raises:
        FanError: if a member is not a triangle of K or consecutive
            triangles do not share exactly one edge
        InvalidMetricError: if a triangle is not realizable
    """
    for position, triangle in enumerate(fan):
        if triangle not in K:
            raise FanError(f"{triangle} is not in the complex", position=position,
                           triangles=[t.to_list() for t in fan])
    return develop(metric, fan)
