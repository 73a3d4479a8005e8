"""
Points and piecewise-linear paths in a metric simplicial complex.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import Tolerances, get_tolerances
from ..core.exceptions import GeodesicError, MalformedInputError, PreconditionError
from ..geometry import MetricAssignment, chord_length
from ..topology import SimplexId, SimplicialComplex

_DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class SimplexPoint:
    """A point of a closed simplex in barycentric coordinates.

    Coordinates are clipped at zero and renormalized on construction, so
    stored values are non-negative and sum to 1.
    """

    simplex: SimplexId
    coords: Tuple[float, ...]

    def __post_init__(self):
        values = np.asarray(self.coords, dtype=float)
        if values.shape != (len(self.simplex.vertices),):
            raise MalformedInputError(
                f"{self.simplex} needs {len(self.simplex.vertices)} barycentric coordinates",
                item=list(self.coords),
            )
        total = float(values.sum())
        slack = get_tolerances().coordinate
        if not np.all(np.isfinite(values)) or values.min() < -slack or abs(total - 1.0) > slack:
            raise MalformedInputError(
                f"Barycentric coordinates on {self.simplex} must be non-negative and sum to 1",
                item=[float(v) for v in values],
            )
        values = np.clip(values, 0.0, None)
        values = values / values.sum()
        object.__setattr__(self, 'coords', tuple(float(v) for v in values))

    @classmethod
    def of(cls, labels: Sequence[str], coords: Sequence[float]) -> 'SimplexPoint':
        """Build from labels in any order, coordinates aligned with the labels."""
        pairs = sorted(zip((str(v) for v in labels), (float(c) for c in coords)))
        if len(pairs) != len(labels) or len(labels) != len(coords):
            raise MalformedInputError("Labels and coordinates differ in length",
                                      item=list(labels))
        return cls(SimplexId.of(*(p[0] for p in pairs)), tuple(p[1] for p in pairs))

    @classmethod
    def vertex(cls, label: str) -> 'SimplexPoint':
        return cls(SimplexId.of(label), (1.0,))

    @classmethod
    def on_edge(cls, u: str, v: str, fraction: float) -> 'SimplexPoint':
        """The point (1 - fraction)·u + fraction·v."""
        return cls.of((u, v), (1.0 - fraction, fraction))

    def weights(self) -> Dict[str, float]:
        return dict(zip(self.simplex.vertices, self.coords))

    def carrier(self, tol: float = _DEFAULT_TOL.barycentric) -> SimplexId:
        """Smallest face containing the point."""
        labels = [v for v, c in zip(self.simplex.vertices, self.coords) if c > tol]
        return SimplexId(tuple(labels))

    def reduced(self, tol: float = _DEFAULT_TOL.barycentric) -> 'SimplexPoint':
        """The same point expressed on its carrier."""
        carrier = self.carrier(tol)
        weights = self.weights()
        return SimplexPoint(carrier, tuple(weights[v] for v in carrier.vertices))

    def in_closed(self, simplex: SimplexId, tol: float = _DEFAULT_TOL.barycentric) -> bool:
        return simplex.contains(self.carrier(tol))

    def coords_in(self, vertices: Sequence[str],
                  tol: float = _DEFAULT_TOL.barycentric) -> np.ndarray:
        """
        Coordinates over a vertex list containing the carrier.

        Raises:
            PreconditionError: if the carrier is not among `vertices`
        """
        weights = self.weights()
        missing = [v for v in self.carrier(tol).vertices if v not in vertices]
        if missing:
            raise PreconditionError(
                f"Point on {self.simplex} does not lie in the simplex spanned by {list(vertices)}",
                operation='coords_in',
                subject=self.to_dict(),
            )
        return np.array([weights.get(v, 0.0) for v in vertices])

    def close_to(self, other: 'SimplexPoint', tol: float = _DEFAULT_TOL.barycentric) -> bool:
        labels = sorted(set(self.simplex.vertices) | set(other.simplex.vertices))
        mine = self.weights()
        theirs = other.weights()
        return all(abs(mine.get(v, 0.0) - theirs.get(v, 0.0)) <= tol for v in labels)

    def to_dict(self) -> Dict[str, Any]:
        return {'simplex': self.simplex.to_list(), 'coords': list(self.coords)}

    def __str__(self) -> str:
        body = ", ".join(f"{v}:{c:.6g}" for v, c in zip(self.simplex.vertices, self.coords))
        return f"[{body}]"


def union_vertices(*points: SimplexPoint, tol: float = _DEFAULT_TOL.barycentric) -> Tuple[str, ...]:
    """Sorted union of the carriers' vertices."""
    labels = set()
    for point in points:
        labels.update(point.carrier(tol).vertices)
    return tuple(sorted(labels))


def interpolate(x: SimplexPoint, y: SimplexPoint, fraction: float) -> SimplexPoint:
    """Point at `fraction` along the straight segment [x, y] of their common simplex."""
    vertices = union_vertices(x, y)
    if len(vertices) > 4:
        raise GeodesicError("Points do not share a simplex", source=x.to_dict(), target=y.to_dict())
    coords = (1.0 - fraction) * x.coords_in(vertices) + fraction * y.coords_in(vertices)
    return SimplexPoint(SimplexId(vertices), tuple(coords)).reduced()


def segment_length(metric: MetricAssignment, x: SimplexPoint, y: SimplexPoint) -> float:
    """Euclidean length of [x, y] inside the simplex spanned by both carriers."""
    vertices = union_vertices(x, y)
    if len(vertices) == 1:
        return 0.0
    if len(vertices) > 4:
        raise GeodesicError("Points do not share a simplex", source=x.to_dict(), target=y.to_dict())
    return chord_length(metric, vertices, x.coords_in(vertices), y.coords_in(vertices))


def segment_hits_interior(x: SimplexPoint, y: SimplexPoint, simplex: SimplexId) -> bool:
    """True when the open segment (x, y) meets the interior of `simplex`.

    Along a segment a barycentric coordinate stays zero only if it is zero at
    both ends, so the open segment is interior exactly when the two carriers
    together span the simplex.
    """
    return set(union_vertices(x, y)) == set(simplex.vertices)


# =======================================================================
# Paths
# =======================================================================

@dataclass(frozen=True)
class PiecewisePath:
    """Consecutive points joined by straight segments, each inside one closed simplex."""

    points: Tuple[SimplexPoint, ...]
    length: float
    segment_lengths: Tuple[float, ...] = field(default=(), compare=False)

    @classmethod
    def through(cls, metric: MetricAssignment, points: Iterable[SimplexPoint]) -> 'PiecewisePath':
        points = tuple(points)
        if not points:
            raise MalformedInputError("A path needs at least one point")
        pieces = tuple(segment_length(metric, a, b) for a, b in zip(points, points[1:]))
        return cls(points, float(sum(pieces)), pieces)

    @property
    def start(self) -> SimplexPoint:
        return self.points[0]

    @property
    def end(self) -> SimplexPoint:
        return self.points[-1]

    def segments(self) -> List[Tuple[SimplexPoint, SimplexPoint]]:
        return list(zip(self.points, self.points[1:]))

    def _pieces(self, metric: MetricAssignment) -> Tuple[float, ...]:
        if len(self.segment_lengths) == len(self.points) - 1:
            return self.segment_lengths
        return tuple(segment_length(metric, a, b) for a, b in self.segments())

    def point_at_length(self, metric: MetricAssignment, distance: float) -> SimplexPoint:
        """Point at arclength `distance` from the start (clamped to the path)."""
        pieces = self._pieces(metric)
        remaining = min(max(distance, 0.0), sum(pieces))
        for (a, b), piece in zip(self.segments(), pieces):
            if remaining <= piece:
                return interpolate(a, b, remaining / piece) if piece > 0 else a
            remaining -= piece
        return self.end

    def point_at(self, metric: MetricAssignment, fraction: float) -> SimplexPoint:
        """Point at `fraction` of the total length."""
        return self.point_at_length(metric, fraction * sum(self._pieces(metric)))

    def concatenate(self, other: 'PiecewisePath') -> 'PiecewisePath':
        """This path followed by `other`; the end of one must be the start of the other."""
        if not self.end.close_to(other.start, get_tolerances().coordinate):
            raise PreconditionError("Paths do not meet", operation='concatenate',
                                    subject={'end': self.end.to_dict(),
                                             'start': other.start.to_dict()})
        return PiecewisePath(
            self.points + other.points[1:],
            self.length + other.length,
            tuple(self.segment_lengths) + tuple(other.segment_lengths),
        )

    def reversed(self) -> 'PiecewisePath':
        return PiecewisePath(self.points[::-1], self.length, tuple(self.segment_lengths[::-1]))

    def validate(self, K: SimplicialComplex, metric: MetricAssignment,
                 tol: Optional[float] = None) -> None:
        """
        Check that consecutive points share a simplex of K and the stored length.

        Raises:
            GeodesicError: naming the first offending segment
        """
        tol = tol if tol is not None else get_tolerances().spatial
        for a, b in self.segments():
            if K.span(union_vertices(a, b)) is None:
                raise GeodesicError("Consecutive path points share no simplex",
                                    source=a.to_dict(), target=b.to_dict())
        recomputed = path_length(self, metric)
        if abs(recomputed - self.length) > tol * max(1.0, recomputed):
            raise GeodesicError(f"Stored length {self.length} differs from {recomputed}")

    def to_dict(self) -> Dict[str, Any]:
        return {'length': self.length, 'points': [p.to_dict() for p in self.points]}


def path_length(path: PiecewisePath, metric: MetricAssignment) -> float:
    """Sum of the straight segment lengths, recomputed from the metric."""
    return float(sum(segment_length(metric, a, b) for a, b in path.segments()))
