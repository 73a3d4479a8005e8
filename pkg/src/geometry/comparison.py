"""
Flat comparison geometry: comparison angles and triangles, triangle
curvature, and Aleksandrov's lemma on planar quadrilaterals.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.config import Tolerances, get_tolerances
from ..core.exceptions import DegenerateInputError, InvalidMetricError
from ..core.utils.enums import AleksandrovCase, Direction

_DEFAULT_TOL = Tolerances()


def planar_angle(apex, u, v) -> float:
    """Angle at `apex` between the rays towards u and v, in [0, π] (atan2 form)."""
    a = np.asarray(u, dtype=float) - np.asarray(apex, dtype=float)
    b = np.asarray(v, dtype=float) - np.asarray(apex, dtype=float)
    cross = a[0] * b[1] - a[1] * b[0]
    return float(np.arctan2(abs(cross), float(a @ b)))


def cross2(o, a, b) -> float:
    """z-component of (a - o) × (b - o); positive when o, a, b turn left."""
    return float((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def comparison_angle(opposite: float, adjacent1: float, adjacent2: float,
                     tol: float = _DEFAULT_TOL.planar) -> float:
    """
    Angle opposite to `opposite` in the planar triangle with these sides.

    Degenerate (collinear) triples are accepted and give 0 or π.

    Raises:
        InvalidMetricError: if an adjacent side is not positive or a triangle
            inequality fails beyond tolerance
    """
    if adjacent1 <= 0 or adjacent2 <= 0 or opposite < 0:
        raise InvalidMetricError(
            "Comparison angle needs positive adjacent sides",
            lengths=[opposite, adjacent1, adjacent2],
        )
    scale = max(opposite, adjacent1, adjacent2)
    slack = tol * scale
    if (opposite > adjacent1 + adjacent2 + slack
            or adjacent1 > opposite + adjacent2 + slack
            or adjacent2 > opposite + adjacent1 + slack):
        raise InvalidMetricError(
            "Triangle inequality violated",
            lengths=[opposite, adjacent1, adjacent2],
        )
    cosine = (adjacent1 ** 2 + adjacent2 ** 2 - opposite ** 2) / (2.0 * adjacent1 * adjacent2)
    return float(np.arccos(np.clip(cosine, -1.0, 1.0)))


def triangle_curvature(alpha: float, beta: float, gamma: float) -> float:
    """Angle sum minus π."""
    return alpha + beta + gamma - np.pi


@dataclass(frozen=True)
class ComparisonTriangle:
    """Planar triangle with given side lengths and the angles they force.

    Vertices are numbered 1, 2, 3; l12 is the side between vertices 1 and 2.
    """

    l12: float
    l23: float
    l31: float
    angle1: float
    angle2: float
    angle3: float

    @classmethod
    def from_lengths(cls, l12: float, l23: float, l31: float,
                     tol: float = _DEFAULT_TOL.planar) -> 'ComparisonTriangle':
        if min(l12, l23, l31) < 0:
            raise InvalidMetricError("Side lengths must be non-negative", lengths=[l12, l23, l31])
        angle1 = comparison_angle(l23, l12, l31, tol) if l12 > 0 and l31 > 0 else 0.0
        angle2 = comparison_angle(l31, l12, l23, tol) if l12 > 0 and l23 > 0 else 0.0
        angle3 = comparison_angle(l12, l23, l31, tol) if l23 > 0 and l31 > 0 else 0.0
        return cls(l12, l23, l31, angle1, angle2, angle3)

    @property
    def angles(self) -> Tuple[float, float, float]:
        return (self.angle1, self.angle2, self.angle3)

    @property
    def curvature(self) -> float:
        return triangle_curvature(*self.angles)

    def points(self) -> np.ndarray:
        """Planar vertices: 1 at the origin, 2 on the positive axis, 3 above it."""
        p3 = self.l31 * np.array([np.cos(self.angle1), np.sin(self.angle1)])
        return np.array([[0.0, 0.0], [self.l12, 0.0], p3])

    def comparison_point(self, start: int, end: int, fraction: float) -> np.ndarray:
        """Point at `fraction` of the way from vertex `start` to vertex `end` (1-based)."""
        pts = self.points()
        return (1.0 - fraction) * pts[start - 1] + fraction * pts[end - 1]


# =======================================================================
# Aleksandrov's lemma
# =======================================================================

@dataclass(frozen=True)
class Comparison:
    """One measured inequality: rebuilt value against original value."""

    name: str
    rebuilt: float
    original: float
    direction: Direction

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'rebuilt': self.rebuilt, 'original': self.original,
                'direction': self.direction.value}


@dataclass(frozen=True)
class AleksandrovResult:
    case: AleksandrovCase
    angle_sum_at_d: float
    rebuilt: Dict[str, np.ndarray] = field(hash=False)
    comparisons: List[Comparison] = field(hash=False)

    def directions(self) -> List[Direction]:
        return [c.direction for c in self.comparisons]

    def expected_direction(self) -> Direction:
        return {
            AleksandrovCase.LESS_PI: Direction.LESS,
            AleksandrovCase.EQUAL_PI: Direction.EQUAL,
            AleksandrovCase.GREATER_PI: Direction.GREATER,
        }[self.case]

    def consistent(self) -> bool:
        return all(d is self.expected_direction() for d in self.directions())


def _direction(rebuilt: float, original: float, tol: float) -> Direction:
    if rebuilt > original + tol:
        return Direction.GREATER
    if rebuilt < original - tol:
        return Direction.LESS
    return Direction.EQUAL


def aleksandrov_lemma(a, b, c, d, tol: float = _DEFAULT_TOL.planar,
                      equality_tol: Optional[float] = None) -> AleksandrovResult:
    """
    Straighten the bend of the path a-d-c and compare against the original.

    The rebuilt triangle a'b'c' has |a'b'| = |ab|, |b'c'| = |bc| and
    |a'c'| = |ad| + |dc|, with d' on [a', c'] at distance |ad| from a'. The
    case is the sign of ∠_d(a,b) + ∠_d(b,c) − π, and the three comparisons
    (|b'd'| vs |bd|, angle at a' vs ∠_a(b,d), angle at c' vs ∠_c(b,d)) all point
    the same way: down for less_pi, up for greater_pi, equal for equal_pi.

    Args:
        a, b, c, d: Planar points, a and c strictly on opposite sides of line bd
        tol: Case tolerance on the angle sum (radians)
        equality_tol: Relative tolerance for reporting a comparison as equal

    Raises:
        DegenerateInputError: if d == b, a or c lies on line bd, or the rebuilt
            triangle is not realizable
    """
    equality_tol = equality_tol if equality_tol is not None else get_tolerances().equality
    a, b, c, d = (np.asarray(p, dtype=float) for p in (a, b, c, d))
    bd = float(np.linalg.norm(b - d))
    scale = max(float(np.linalg.norm(p - q)) for p, q in ((a, b), (b, c), (c, d), (d, a), (b, d)))
    if bd <= tol * max(scale, 1.0):
        raise DegenerateInputError("d coincides with b", operation='aleksandrov_lemma')
    side_a = cross2(b, d, a)
    side_c = cross2(b, d, c)
    if abs(side_a) <= tol * scale ** 2 or abs(side_c) <= tol * scale ** 2 or side_a * side_c > 0:
        raise DegenerateInputError(
            "a and c must lie strictly on opposite sides of line bd",
            operation='aleksandrov_lemma',
        )

    ab, bc = float(np.linalg.norm(a - b)), float(np.linalg.norm(b - c))
    ad, dc = float(np.linalg.norm(a - d)), float(np.linalg.norm(d - c))
    base = ad + dc
    if ab + bc < base * (1.0 - tol) or abs(ab - bc) > base * (1.0 + tol):
        raise DegenerateInputError(
            "Rebuilt triangle with sides |ab|, |bc|, |ad|+|dc| is not realizable",
            operation='aleksandrov_lemma',
        )

    angle_sum = planar_angle(d, a, b) + planar_angle(d, b, c)
    excess = angle_sum - np.pi
    if abs(excess) <= tol:
        case = AleksandrovCase.EQUAL_PI
    elif excess < 0:
        case = AleksandrovCase.LESS_PI
    else:
        case = AleksandrovCase.GREATER_PI

    a_r = np.array([0.0, 0.0])
    c_r = np.array([base, 0.0])
    x = (ab ** 2 + base ** 2 - bc ** 2) / (2.0 * base)
    b_r = np.array([x, np.sqrt(max(ab ** 2 - x ** 2, 0.0))])
    d_r = np.array([ad, 0.0])

    rel = equality_tol * scale
    comparisons = [
        Comparison('distance_b_d', float(np.linalg.norm(b_r - d_r)), bd,
                   Direction.EQUAL),
        Comparison('angle_at_a', planar_angle(a_r, b_r, d_r), planar_angle(a, b, d),
                   Direction.EQUAL),
        Comparison('angle_at_c', planar_angle(c_r, b_r, d_r), planar_angle(c, b, d),
                   Direction.EQUAL),
    ]
    comparisons = [
        Comparison(cmp.name, cmp.rebuilt, cmp.original,
                   _direction(cmp.rebuilt, cmp.original, rel if i == 0 else equality_tol))
        for i, cmp in enumerate(comparisons)
    ]
    return AleksandrovResult(
        case=case,
        angle_sum_at_d=angle_sum,
        rebuilt={'a': a_r, 'b': b_r, 'c': c_r, 'd': d_r},
        comparisons=comparisons,
    )
