"""
Balance points on a shared edge of two triangles, hinge minimizers and the
angle conditions that certify them.

Throughout, a point x lying in a simplex that contains the edge (a, b) is
described by its foot on the line ab: `along` (signed distance from a) and
`height` (distance from the line). Unfolding the hinge at ab puts x at
(along, -height) and a second point y at (along_y, +height_y).
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from ..core.config import Tolerances, get_config, get_tolerances
from ..core.exceptions import DegenerateInputError, NoInteriorCrossingError, PreconditionError
from ..core.utils.enums import Verdict
from ..geometry import MetricAssignment, alexandrov_angle_estimate, comparison_angle, planar_angle
from ..topology import SimplexId
from .points import SimplexPoint, interpolate, segment_length

logger = logging.getLogger("cat0.geodesics")

_DEFAULT_TOL = Tolerances()


# =======================================================================
# Hinge geometry
# =======================================================================

def edge_foot(metric: MetricAssignment, x: SimplexPoint, a: str, b: str) -> Tuple[float, float]:
    """(along, height) of x relative to the edge from a to b."""
    length = metric.length(a, b)
    da = segment_length(metric, x, SimplexPoint.vertex(a))
    db = segment_length(metric, x, SimplexPoint.vertex(b))
    along = (da * da + length * length - db * db) / (2.0 * length)
    height = float(np.sqrt(max(da * da - along * along, 0.0)))
    return along, height


def distance_to_edge_point(metric: MetricAssignment, x: SimplexPoint, a: str, b: str,
                           u: float) -> float:
    """d(x, (1-u)a + u b) by Stewart's relation, no realization needed."""
    length = metric.length(a, b)
    da = segment_length(metric, x, SimplexPoint.vertex(a))
    db = segment_length(metric, x, SimplexPoint.vertex(b))
    value = (1.0 - u) * da * da + u * db * db - u * (1.0 - u) * length * length
    return float(np.sqrt(max(value, 0.0)))


@dataclass(frozen=True)
class HingeMinimum:
    """Minimizer of d(x, s) + d(s, y) over s on an edge."""

    edge: SimplexId
    parameter: float
    length: float
    clamped: bool

    @property
    def point(self) -> SimplexPoint:
        a, b = self.edge.vertices
        return SimplexPoint.on_edge(a, b, self.parameter)


def hinge_minimizer(metric: MetricAssignment, x: SimplexPoint, y: SimplexPoint,
                    a: str, b: str, tol: float = _DEFAULT_TOL.planar) -> HingeMinimum:
    """
    Shortest two-segment route x → s → y with s on the edge ab.

    x and y must each lie in a simplex containing ab. The length is convex in
    the edge parameter, so clamping the unfolded crossing to [0, 1] gives the
    constrained minimizer; `clamped` marks a route through a vertex.
    """
    length = metric.length(a, b)
    xa, xh = edge_foot(metric, x, a, b)
    ya, yh = edge_foot(metric, y, a, b)
    if xh + yh <= tol * length:
        target = 0.5 * (xa + ya)
    else:
        target = xa + (ya - xa) * xh / (xh + yh)
    u = target / length
    clamped = not tol < u < 1.0 - tol
    u = float(min(max(u, 0.0), 1.0))
    total = distance_to_edge_point(metric, x, a, b, u) + distance_to_edge_point(metric, y, a, b, u)
    return HingeMinimum(edge=SimplexId.of(a, b), parameter=u, length=total, clamped=clamped)


# =======================================================================
# Balance points
# =======================================================================

@dataclass(frozen=True)
class BalancePoint:
    point: SimplexPoint
    parameter: float
    residual: float = 0.0
    bracket: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {'point': self.point.to_dict(), 'parameter': self.parameter,
                'residual': self.residual, 'bracket': self.bracket}


@dataclass(frozen=True)
class NoInteriorCrossing:
    """The unfolded straight line does not cross the open edge."""

    edge: SimplexId
    parameter: float
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return {'edge': self.edge.to_list(), 'parameter': self.parameter, 'reason': self.reason}


def _shared_edge(tau1: SimplexId, tau2: SimplexId, p1: SimplexPoint,
                 q1: SimplexPoint) -> Tuple[str, str]:
    shared = tau1.intersection(tau2)
    if tau1 == tau2 or tau1.dimension != 2 or tau2.dimension != 2 or len(shared) != 2:
        raise PreconditionError(f"{tau1} and {tau2} must be distinct triangles sharing an edge",
                                operation='balance_point',
                                subject=[tau1.to_list(), tau2.to_list()])
    if not p1.in_closed(tau1) or not q1.in_closed(tau2):
        raise PreconditionError("Points must lie in their closed triangles",
                                operation='balance_point',
                                subject={'p1': p1.to_dict(), 'q1': q1.to_dict()})
    return shared[0], shared[1]


def _hinge_images(metric: MetricAssignment, p1: SimplexPoint, q1: SimplexPoint,
                  a: str, b: str) -> Tuple[np.ndarray, np.ndarray]:
    pa, ph = edge_foot(metric, p1, a, b)
    qa, qh = edge_foot(metric, q1, a, b)
    return np.array([pa, -ph]), np.array([qa, qh])


def balance_point_closed_form(
    metric: MetricAssignment,
    p1: SimplexPoint,
    q1: SimplexPoint,
    tau1: SimplexId,
    tau2: SimplexId,
    tol: float = _DEFAULT_TOL.planar,
) -> Union[BalancePoint, NoInteriorCrossing]:
    """
    Balance point of p1 ∈ τ1 and q1 ∈ τ2 on the edge e = τ1 ∩ τ2.

    Unfold the two triangles; the balance point is where the straight
    segment [p̄1, q̄1] crosses ē. Straight lines equalize the opposite
    angles, so this is the unique point with ∠s(a,p1) = ∠s(b,q1).

    Returns:
        BalancePoint on e, or NoInteriorCrossing when the crossing is not
        in the open edge

    Raises:
        PreconditionError: if τ1, τ2 do not share an edge or a point is outside its triangle
        InvalidMetricError: if a triangle is not realizable
    """
    a, b = _shared_edge(tau1, tau2, p1, q1)
    edge_id = SimplexId.of(a, b)
    length = metric.length(a, b)
    p_bar, q_bar = _hinge_images(metric, p1, q1, a, b)
    heights = -p_bar[1] + q_bar[1]
    if heights <= tol * length:
        return NoInteriorCrossing(edge=edge_id, parameter=float('nan'), reason='on_edge_line')
    lam = -p_bar[1] / heights
    along = p_bar[0] + lam * (q_bar[0] - p_bar[0])
    u = along / length
    if not tol < u < 1.0 - tol:
        return NoInteriorCrossing(edge=edge_id, parameter=float(u), reason='outside_open_edge')
    s_bar = np.array([along, 0.0])
    chord = q_bar - p_bar
    residual = abs(float(chord[0] * (s_bar - p_bar)[1] - chord[1] * (s_bar - p_bar)[0]))
    residual /= max(float(np.linalg.norm(chord)), tol)
    return BalancePoint(point=SimplexPoint.on_edge(a, b, float(u)), parameter=float(u),
                        residual=residual)


def angle_lean(p_bar: np.ndarray, q_bar: np.ndarray, length: float, u: float) -> float:
    """
    (∠t(p1,a) + ∠t(a,q1)) - (∠t(q1,b) + ∠t(b,p1)) at t = u·|ab| in the hinge unfolding.

    Positive for points before the balance point, negative after it.
    """
    t_bar = np.array([u * length, 0.0])
    towards_a = t_bar + np.array([-1.0, 0.0])
    towards_b = t_bar + np.array([1.0, 0.0])
    first = planar_angle(t_bar, p_bar, towards_a) + planar_angle(t_bar, towards_a, q_bar)
    second = planar_angle(t_bar, q_bar, towards_b) + planar_angle(t_bar, towards_b, p_bar)
    return first - second


def balance_point_bisection(
    metric: MetricAssignment,
    p1: SimplexPoint,
    q1: SimplexPoint,
    tau1: SimplexId,
    tau2: SimplexId,
    iterations: int = 50,
) -> BalancePoint:
    """
    Balance point by bisection on the edge.

    Points where the angle sum on the a-side exceeds the b-side lie before
    the balance point; points where it falls short lie after it. Starting
    from the bracket [a, b], every step halves the bracket by the type of its
    midpoint.

    Returns:
        The bracket midpoint; `bracket` is the final bracket width in length units

    Raises:
        NoInteriorCrossingError: if a is not before or b is not after the balance point
    """
    a, b = _shared_edge(tau1, tau2, p1, q1)
    length = metric.length(a, b)
    p_bar, q_bar = _hinge_images(metric, p1, q1, a, b)
    if np.linalg.norm(p_bar) == 0 or np.linalg.norm(q_bar) == 0:
        raise NoInteriorCrossingError("A point coincides with an edge endpoint",
                                      edge=[a, b])
    if not (angle_lean(p_bar, q_bar, length, 0.0) > 0 > angle_lean(p_bar, q_bar, length, 1.0)):
        raise NoInteriorCrossingError(f"No interior crossing on edge ({a},{b})", edge=[a, b])
    lo, hi = 0.0, 1.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        lean = angle_lean(p_bar, q_bar, length, mid)
        if lean > 0:
            lo = mid
        elif lean < 0:
            hi = mid
        else:
            lo = hi = mid
            break
    u = 0.5 * (lo + hi)
    return BalancePoint(point=SimplexPoint.on_edge(a, b, u), parameter=u,
                        residual=abs(angle_lean(p_bar, q_bar, length, u)) / 2.0,
                        bracket=(hi - lo) * length)


# =======================================================================
# Angle conditions
# =======================================================================

@dataclass(frozen=True)
class DetourCheck:
    angle_condition: bool
    strict_inequality: bool
    angle_sum: float
    through_s: float
    through_t: float

    @property
    def consistent(self) -> bool:
        """The angle condition implies the strict inequality."""
        return self.strict_inequality or not self.angle_condition

    def to_dict(self) -> Dict[str, Any]:
        return {'angle_condition': self.angle_condition,
                'strict_inequality': self.strict_inequality,
                'angle_sum': self.angle_sum,
                'through_s': self.through_s, 'through_t': self.through_t}


def _angle_at(metric: MetricAssignment, apex: SimplexPoint, x: SimplexPoint,
              y: SimplexPoint) -> float:
    return comparison_angle(segment_length(metric, x, y), segment_length(metric, apex, x),
                            segment_length(metric, apex, y))


def detour_inequality_check(
    metric: MetricAssignment,
    p: SimplexPoint,
    q: SimplexPoint,
    s: SimplexPoint,
    t: SimplexPoint,
    angle_sum_at_s: Optional[float] = None,
    tol: Optional[float] = None,
) -> DetourCheck:
    """
    Compare the route through s with the route through t.

    angle_condition is ∠s(p,t) + ∠s(t,q) ≥ π (within tol); when it holds,
    d(p,s) + d(s,q) < d(p,t) + d(t,q) is expected.

    Raises:
        DegenerateInputError: if two of the four points coincide
    """
    tol = tol if tol is not None else get_tolerances().angle
    named = {'p': p, 'q': q, 's': s, 't': t}
    labels = list(named)
    for i, first in enumerate(labels):
        for second in labels[i + 1:]:
            if first in ('p', 'q') and second in ('p', 'q'):
                continue
            if segment_length(metric, named[first], named[second]) <= tol:
                raise DegenerateInputError(f"Points {first} and {second} coincide",
                                           operation='detour_inequality_check')
    if angle_sum_at_s is None:
        angle_sum_at_s = _angle_at(metric, s, p, t) + _angle_at(metric, s, t, q)
    through_s = segment_length(metric, p, s) + segment_length(metric, s, q)
    through_t = segment_length(metric, p, t) + segment_length(metric, t, q)
    return DetourCheck(
        angle_condition=angle_sum_at_s >= np.pi - tol,
        strict_inequality=through_s < through_t,
        angle_sum=float(angle_sum_at_s),
        through_s=through_s,
        through_t=through_t,
    )


@dataclass(frozen=True)
class ExtendedAngleResult:
    verdict: Verdict
    angle_sum: float
    uncertainty: float
    hypothesis_sum: float

    @property
    def holds(self) -> Optional[bool]:
        if self.verdict is Verdict.INCONCLUSIVE:
            return None
        return self.verdict is Verdict.PASS

    def to_dict(self) -> Dict[str, Any]:
        return {'verdict': self.verdict.value, 'angle_sum': self.angle_sum,
                'uncertainty': self.uncertainty, 'hypothesis_sum': self.hypothesis_sum}


def _angle_sum_estimate(metric: MetricAssignment, s: SimplexPoint, x: SimplexPoint,
                        t: SimplexPoint, y: SimplexPoint, halvings: int) -> Tuple[float, float]:
    reach = {label: segment_length(metric, s, target) for label, target in
             (('x', x), ('t', t), ('y', y))}
    t0 = 0.5 * min(reach.values())
    if t0 <= 0:
        raise DegenerateInputError("A point coincides with s", operation='extended_angle_check')

    def ray(target: SimplexPoint, total: float):
        return lambda r: interpolate(s, target, r / total)

    def dist(u: SimplexPoint, v: SimplexPoint) -> float:
        return segment_length(metric, u, v)

    first = alexandrov_angle_estimate(ray(x, reach['x']), ray(t, reach['t']), t0, halvings, dist)
    second = alexandrov_angle_estimate(ray(t, reach['t']), ray(y, reach['y']), t0, halvings, dist)
    return first.value + second.value, first.uncertainty + second.uncertainty


def extended_angle_check(
    metric: MetricAssignment,
    p: SimplexPoint,
    q: SimplexPoint,
    p1: SimplexPoint,
    q1: SimplexPoint,
    s: SimplexPoint,
    t: SimplexPoint,
    halvings: Optional[int] = None,
    tol: Optional[float] = None,
) -> ExtendedAngleResult:
    """
    Check that ∠s(p,t) + ∠s(t,q) ≥ π given ∠s(p1,t) + ∠s(t,q1) ≥ π.

    Angles are Alexandrov-angle estimates along the straight rays from s.
    The verdict is inconclusive when the hypothesis for p1, q1 fails or when
    the estimate's uncertainty straddles the threshold.
    """
    halvings = halvings if halvings is not None else get_config().angle_halvings
    tol = tol if tol is not None else get_tolerances().angle
    hypothesis, _ = _angle_sum_estimate(metric, s, p1, t, q1, halvings)
    angle_sum, uncertainty = _angle_sum_estimate(metric, s, p, t, q, halvings)
    if hypothesis < np.pi - tol:
        verdict = Verdict.INCONCLUSIVE
    elif angle_sum - uncertainty >= np.pi - tol:
        verdict = Verdict.PASS
    elif angle_sum + uncertainty < np.pi - tol:
        verdict = Verdict.FAIL
    else:
        verdict = Verdict.INCONCLUSIVE
    logger.debug(f"Extended angle check at {s}: sum={angle_sum:.15g} ({verdict.value})")
    return ExtendedAngleResult(verdict=verdict, angle_sum=angle_sum, uncertainty=uncertainty,
                               hypothesis_sum=hypothesis)
