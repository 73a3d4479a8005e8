"""
Rerouting geodesics around a collapsed tetrahedron.

A free pair (σ, α) with σ a tetrahedron and α one of its triangles is
removed. The apex a is the vertex of σ opposite α; the three faces of σ at a
survive. A geodesic that crossed σ, entering through face τ_in and leaving
through τ_out, is replaced by the shorter of two routes:

    through_s    p → s → q with s on e_d = τ_in ∩ τ_out
    through_t_v  p → t → v → q with t on e_in = τ_in ∩ τ_k and v on
                 e_out = τ_out ∩ τ_k, τ_k being the third face at a
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from ..core.config import Tolerances, get_config, get_tolerances
from ..core.exceptions import CrossingError, PreconditionError
from ..core.utils import serial_minimize
from ..core.utils.enums import RerouteChannel
from ..geometry import MetricAssignment
from ..topology import FreeFacePair, SimplexId, SimplicialComplex, is_free
from .balance import (
    BalancePoint,
    NoInteriorCrossing,
    balance_point_closed_form,
    distance_to_edge_point,
    hinge_minimizer,
)
from .points import PiecewisePath, SimplexPoint, segment_length
from .unfolding import develop

logger = logging.getLogger("cat0.geodesics")


class CollapseGeometry:
    """A tetrahedron σ with free face α inside a metric complex K (before the collapse)."""

    def __init__(self, K: SimplicialComplex, metric: MetricAssignment, sigma: SimplexId,
                 alpha: SimplexId):
        if sigma.dimension != 3 or alpha.dimension != 2 or not alpha.is_face_of(sigma):
            raise PreconditionError("Need a tetrahedron and one of its triangles",
                                    operation='collapse_geometry',
                                    subject={'sigma': sigma.to_list(), 'alpha': alpha.to_list()})
        pair = FreeFacePair(free_face=alpha, coface=sigma)
        if not is_free(K, pair):
            raise PreconditionError(f"{alpha} is not a free face of {sigma}",
                                    operation='collapse_geometry', subject=pair.to_dict())
        self.K = K
        self.metric = metric
        self.sigma = sigma
        self.alpha = alpha
        (self.apex,) = [v for v in sigma.vertices if v not in alpha.vertices]

    @property
    def pair(self) -> FreeFacePair:
        return FreeFacePair(free_face=self.alpha, coface=self.sigma)

    @cached_property
    def collapsed(self) -> SimplicialComplex:
        """K' = K minus σ and α."""
        return self.K.without(self.sigma, self.alpha)

    @cached_property
    def radius(self) -> float:
        """Longest edge of σ."""
        return self.metric.diameter(self.sigma)

    @cached_property
    def faces_at_apex(self) -> List[SimplexId]:
        return sorted(f for f in self.sigma.facets() if self.apex in f.vertices)

    def attached(self, face: SimplexId) -> List[SimplexId]:
        """Tetrahedra other than σ glued to σ along `face`."""
        return sorted(c for c in self.K.cofaces(face) if c.dimension == 3 and c != self.sigma)

    def channel_faces(self, tau_in: SimplexId, tau_out: SimplexId) -> Dict[str, SimplexId]:
        """e_d, τ_k, e_in and e_out for a face pair at the apex."""
        (tau_k,) = [f for f in self.faces_at_apex if f not in (tau_in, tau_out)]
        return {
            'e_d': SimplexId(tau_in.intersection(tau_out)),
            'tau_k': tau_k,
            'e_in': SimplexId(tau_in.intersection(tau_k)),
            'e_out': SimplexId(tau_out.intersection(tau_k)),
        }

    # =======================================================================
    # Development in 3-space
    # =======================================================================

    @cached_property
    def _sigma_coords(self) -> Dict[str, np.ndarray]:
        return dict(zip(self.sigma.vertices, self.metric.realize(self.sigma)))

    @cached_property
    def _barycentric_inverse(self) -> np.ndarray:
        coords = np.array([self._sigma_coords[v] for v in self.sigma.vertices])
        system = np.vstack([coords.T, np.ones(4)])
        return np.linalg.inv(system)

    def develop_across(self, tetrahedron: SimplexId, face: SimplexId) -> Dict[str, np.ndarray]:
        """Coordinates of a tetrahedron glued on `face`, placed on the far side from σ."""
        coords = dict(self._sigma_coords)
        (new,) = [v for v in tetrahedron.vertices if v not in face.vertices]
        (inside,) = [v for v in self.sigma.vertices if v not in face.vertices]
        base = [coords[v] for v in face.vertices]
        radii = [self.metric.length(v, new) for v in face.vertices]
        coords[new] = _trilaterate(base, radii, away_from=coords[inside])
        return {v: coords[v] for v in tetrahedron.vertices}

    def sigma_barycentric(self, point: np.ndarray) -> np.ndarray:
        return self._barycentric_inverse @ np.append(point, 1.0)


def _trilaterate(base: List[np.ndarray], radii: List[float],
                 away_from: np.ndarray) -> np.ndarray:
    p1, p2, p3 = base
    r1, r2, r3 = radii
    ex = (p2 - p1) / np.linalg.norm(p2 - p1)
    i = float(ex @ (p3 - p1))
    ey = p3 - p1 - i * ex
    ey = ey / np.linalg.norm(ey)
    ez = np.cross(ex, ey)
    d = float(np.linalg.norm(p2 - p1))
    j = float(ey @ (p3 - p1))
    x = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    y = (r1 * r1 - r3 * r3 + i * i + j * j) / (2.0 * j) - (i / j) * x
    z = float(np.sqrt(max(r1 * r1 - x * x - y * y, 0.0)))
    if float(ez @ (away_from - p1)) > 0:
        z = -z
    return p1 + x * ex + y * ey + z * ez


# =======================================================================
# Crossing detection
# =======================================================================

@dataclass(frozen=True)
class Crossing:
    """A straight segment through σ, in through τ_in at p1 and out through τ_out at q1."""

    tau_in: SimplexId
    tau_out: SimplexId
    tetra_p: SimplexId
    tetra_q: SimplexId
    p1: SimplexPoint
    q1: SimplexPoint
    straight_length: float

    @property
    def face_pair(self) -> Tuple[SimplexId, SimplexId]:
        return (self.tau_in, self.tau_out)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'tau_in': self.tau_in.to_list(),
            'tau_out': self.tau_out.to_list(),
            'tetra_p': self.tetra_p.to_list(),
            'tetra_q': self.tetra_q.to_list(),
            'p1': self.p1.to_dict(),
            'q1': self.q1.to_dict(),
            'straight_length': self.straight_length,
        }


def _face_point(geom: CollapseGeometry, weights: np.ndarray, face: SimplexId) -> SimplexPoint:
    lookup = dict(zip(geom.sigma.vertices, np.clip(weights, 0.0, None)))
    coords = np.array([lookup[v] for v in face.vertices])
    return SimplexPoint(face, tuple(coords / coords.sum()))


def _zero_face(geom: CollapseGeometry, weights: np.ndarray, tol: float) -> SimplexId:
    zeros = [v for v, w in zip(geom.sigma.vertices, weights) if abs(w) <= tol]
    if len(zeros) != 1:
        raise CrossingError("Segment meets σ through an edge or a vertex", kind='edge')
    return geom.sigma.opposite(zeros[0])


def detect_crossing(geom: CollapseGeometry, p: SimplexPoint, q: SimplexPoint,
                    tolerances: Optional[Tolerances] = None) -> Optional[Crossing]:
    """
    Find a straight segment from p to q through the interior of σ.

    The tetrahedra containing p and q that are glued to faces of σ at the
    apex are developed into 3-space together with σ; the segment must enter
    σ through the interior of one such face and leave through another.

    Returns:
        The crossing, or None when no development gives one

    Raises:
        PreconditionError: if p or q lies in closed σ
        CrossingError: if the segment meets σ through an edge or vertex, or
            enters and leaves through the same face
    """
    tol = (tolerances or get_tolerances()).spatial
    for point in (p, q):
        if point.in_closed(geom.sigma):
            raise PreconditionError("Endpoints must lie outside σ", operation='detect_crossing',
                                    subject=point.to_dict())
    sides_p = [(f, t) for f in geom.faces_at_apex for t in geom.attached(f) if p.in_closed(t)]
    sides_q = [(f, t) for f in geom.faces_at_apex for t in geom.attached(f) if q.in_closed(t)]
    for tau_in, tetra_p in sides_p:
        for tau_out, tetra_q in sides_q:
            if tau_in == tau_out or tetra_p == tetra_q:
                continue
            coords_p = geom.develop_across(tetra_p, tau_in)
            coords_q = geom.develop_across(tetra_q, tau_out)
            p_bar = p.coords_in(tetra_p.vertices) @ np.array(
                [coords_p[v] for v in tetra_p.vertices])
            q_bar = q.coords_in(tetra_q.vertices) @ np.array(
                [coords_q[v] for v in tetra_q.vertices])
            lam_p = geom.sigma_barycentric(p_bar)
            lam_q = geom.sigma_barycentric(q_bar)
            slope = lam_q - lam_p
            lo, hi = 0.0, 1.0
            empty = False
            for start, rate in zip(lam_p, slope):
                if abs(rate) <= 1e-300:
                    empty = empty or start < 0
                elif rate > 0:
                    lo = max(lo, -start / rate)
                else:
                    hi = min(hi, -start / rate)
            if empty or hi - lo <= tol:
                continue
            entry = lam_p + lo * slope
            exit_ = lam_p + hi * slope
            entry_face = _zero_face(geom, entry, tol)
            exit_face = _zero_face(geom, exit_, tol)
            if entry_face == exit_face:
                raise CrossingError("Segment enters and leaves σ through the same face",
                                    kind='same_face')
            if entry_face != tau_in or exit_face != tau_out:
                continue
            return Crossing(
                tau_in=tau_in,
                tau_out=tau_out,
                tetra_p=tetra_p,
                tetra_q=tetra_q,
                p1=_face_point(geom, entry, tau_in),
                q1=_face_point(geom, exit_, tau_out),
                straight_length=float(np.linalg.norm(q_bar - p_bar)),
            )
    return None


# =======================================================================
# Reroute
# =======================================================================

@dataclass(frozen=True)
class RerouteResult:
    """The two post-collapse routes and the choice between them.

    On a tie (|signed_margin| within the equality tolerance) through_s is
    chosen and `tie` is set; the chosen route may then exceed the
    alternative by at most that tolerance.
    """

    chosen: PiecewisePath
    alternative: PiecewisePath
    channel: RerouteChannel
    margin: float
    signed_margin: float
    tie: bool
    coincident: bool
    crossing: Crossing
    s_from_crossing: Union[BalancePoint, NoInteriorCrossing]
    fallbacks: Tuple[str, ...] = field(default=())

    @property
    def direct(self) -> PiecewisePath:
        return self.chosen if self.channel is RerouteChannel.THROUGH_S else self.alternative

    @property
    def detour(self) -> PiecewisePath:
        return self.alternative if self.channel is RerouteChannel.THROUGH_S else self.chosen

    def to_dict(self) -> Dict[str, Any]:
        return {
            'channel': self.channel.value,
            'margin': self.margin,
            'signed_margin': self.signed_margin,
            'tie': self.tie,
            'coincident': self.coincident,
            'fallbacks': list(self.fallbacks),
            'chosen': self.chosen.to_dict(),
            'alternative': self.alternative.to_dict(),
            'crossing': self.crossing.to_dict(),
            's_from_crossing': self.s_from_crossing.to_dict(),
        }


def _segment_parameter(start: np.ndarray, end: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """Parameter along [a, b] where the line through start, end crosses it (clamped)."""
    direction = end - start
    edge = b - a
    det = direction[0] * (-edge[1]) - direction[1] * (-edge[0])
    if abs(det) <= 1e-300:
        return 0.5
    rhs = a - start
    u = (direction[0] * rhs[1] - direction[1] * rhs[0]) / det
    return float(min(max(u, 0.0), 1.0))


def _detour(geom: CollapseGeometry, p: SimplexPoint, q: SimplexPoint, crossing: Crossing,
            faces: Dict[str, SimplexId], tolerances: Tolerances,
            max_alternations: int) -> Tuple[float, float]:
    metric = geom.metric
    e_in, e_out, tau_k = faces['e_in'].vertices, faces['e_out'].vertices, faces['tau_k']

    unfolding = develop(metric, [crossing.tau_in, tau_k, crossing.tau_out])
    p_bar = unfolding.point(crossing.p1, 0)
    q_bar = unfolding.point(crossing.q1, 2)
    ut = _segment_parameter(p_bar, q_bar, unfolding.coords(e_in[0], 1),
                            unfolding.coords(e_in[1], 1))
    uv = _segment_parameter(p_bar, q_bar, unfolding.coords(e_out[0], 1),
                            unfolding.coords(e_out[1], 1))

    def total(params) -> float:
        a, b = float(min(max(params[0], 0.0), 1.0)), float(min(max(params[1], 0.0), 1.0))
        t = SimplexPoint.on_edge(e_in[0], e_in[1], a)
        v = SimplexPoint.on_edge(e_out[0], e_out[1], b)
        return (distance_to_edge_point(metric, p, e_in[0], e_in[1], a)
                + segment_length(metric, t, v)
                + distance_to_edge_point(metric, q, e_out[0], e_out[1], b))

    current = total((ut, uv))
    for _ in range(max_alternations):
        v = SimplexPoint.on_edge(e_out[0], e_out[1], uv)
        ut = hinge_minimizer(metric, p, v, e_in[0], e_in[1]).parameter
        t = SimplexPoint.on_edge(e_in[0], e_in[1], ut)
        uv = hinge_minimizer(metric, t, q, e_out[0], e_out[1]).parameter
        updated = total((ut, uv))
        if abs(current - updated) <= tolerances.alternating * max(1.0, current):
            current = updated
            break
        current = updated

    polished = serial_minimize(total, np.array([ut, uv]), method='L-BFGS-B',
                               bounds=[(0.0, 1.0), (0.0, 1.0)],
                               options={'ftol': 1e-15, 'gtol': 1e-12, 'maxiter': 200})
    if polished.fun < current:
        ut, uv = (float(min(max(x, 0.0), 1.0)) for x in polished.x)
    return ut, uv


def reroute_after_collapse(
    geom: CollapseGeometry,
    p: SimplexPoint,
    q: SimplexPoint,
    crossing: Optional[Crossing] = None,
    tolerances: Optional[Tolerances] = None,
    max_alternations: Optional[int] = None,
) -> RerouteResult:
    """
    Replace a geodesic through σ by the shorter surviving route.

    Args:
        geom: The collapse
        p, q: Endpoints outside σ
        crossing: Result of detect_crossing, recomputed when omitted

    Raises:
        PreconditionError: if the segment from p to q does not cross σ
    """
    tolerances = tolerances or Tolerances.from_config()
    if max_alternations is None:
        max_alternations = get_config().max_alternations
    if crossing is None:
        crossing = detect_crossing(geom, p, q, tolerances)
        if crossing is None:
            raise PreconditionError("The geodesic from p to q does not cross σ",
                                    operation='reroute_after_collapse',
                                    subject={'p': p.to_dict(), 'q': q.to_dict()})
    metric = geom.metric
    faces = geom.channel_faces(crossing.tau_in, crossing.tau_out)
    fallbacks = []

    d0, d1 = faces['e_d'].vertices
    hinge = hinge_minimizer(metric, p, q, d0, d1, tolerances.planar)
    if hinge.clamped:
        fallbacks.append('through_s_via_vertex')
    direct = PiecewisePath.through(metric, [p, hinge.point, q])
    s_from_crossing = balance_point_closed_form(metric, crossing.p1, crossing.q1,
                                                crossing.tau_in, crossing.tau_out,
                                                tolerances.planar)
    if isinstance(s_from_crossing, NoInteriorCrossing):
        fallbacks.append('balance_point_not_interior')

    ut, uv = _detour(geom, p, q, crossing, faces, tolerances, max_alternations)
    e_in, e_out = faces['e_in'].vertices, faces['e_out'].vertices
    t = SimplexPoint.on_edge(e_in[0], e_in[1], ut)
    v = SimplexPoint.on_edge(e_out[0], e_out[1], uv)
    if not all(tolerances.planar < u < 1.0 - tolerances.planar for u in (ut, uv)):
        fallbacks.append('through_t_v_via_vertex')
    detour = PiecewisePath.through(metric, [p, t, v, q])

    signed = detour.length - direct.length
    tie = abs(signed) <= tolerances.property_a_equality * 2.0 * geom.radius
    apex = SimplexPoint.vertex(geom.apex)
    near = tolerances.coincidence
    coincident = (hinge.point.close_to(apex, near) and t.close_to(apex, near)
                  and v.close_to(apex, near))
    if tie or signed > 0:
        channel, chosen, alternative = RerouteChannel.THROUGH_S, direct, detour
    else:
        channel, chosen, alternative = RerouteChannel.THROUGH_T_V, detour, direct
    if tie and not coincident:
        logger.warning(f"Channels tie within tolerance for {p} -> {q}: margin {signed:.3e}")
    return RerouteResult(
        chosen=chosen,
        alternative=alternative,
        channel=channel,
        margin=abs(signed),
        signed_margin=signed,
        tie=tie,
        coincident=coincident,
        crossing=crossing,
        s_from_crossing=s_from_crossing,
        fallbacks=tuple(fallbacks),
    )
