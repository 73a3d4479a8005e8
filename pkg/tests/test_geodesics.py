"""Points, unfoldings, balance points, solvers and reroutes around a collapse."""

import math

import numpy as np
import pytest

from src.core.exceptions import (
    DegenerateInputError,
    FanError,
    GeodesicError,
    MalformedInputError,
    NoInteriorCrossingError,
    PreconditionError,
)
from src.core.utils.enums import RerouteChannel, Verdict
from src.geodesics import (
    BalancePoint,
    CollapseGeometry,
    NoInteriorCrossing,
    PiecewisePath,
    ResolutionExhausted,
    SimplexPoint,
    balance_point_bisection,
    balance_point_closed_form,
    brute_force_distance,
    brute_force_path,
    detect_crossing,
    detour_inequality_check,
    develop,
    extended_angle_check,
    geodesic_midpoint,
    hinge_minimizer,
    interpolate,
    path_avoids,
    path_length,
    reroute_after_collapse,
    safe_midpoint,
    segment_length,
    unfold_fan,
)
from src.geodesics.solver import GeodesicSolver
from src.geometry import MetricAssignment
from src.topology import SimplexId, build_complex

from .conftest import load_fixture

try:
    from hypothesis import assume, given, settings
    from hypothesis import strategies as st
except ModuleNotFoundError:  # pragma: no cover - environment-specific fallback
    pytest.skip("hypothesis is required for property-based tests", allow_module_level=True)


TAU1 = SimplexId.of('a', 'b', 'x')
TAU2 = SimplexId.of('a', 'b', 'y')


def _hinge_metric(length, x, y):
    """Triangles a,b,x and a,b,y unfolded with a at the origin and b on the axis."""
    a, b = np.array([0.0, 0.0]), np.array([length, 0.0])
    x, y = np.asarray(x), np.asarray(y)
    return MetricAssignment.from_pairs({
        ('a', 'b'): length,
        ('a', 'x'): float(np.linalg.norm(x - a)),
        ('b', 'x'): float(np.linalg.norm(x - b)),
        ('a', 'y'): float(np.linalg.norm(y - a)),
        ('b', 'y'): float(np.linalg.norm(y - b)),
    })


@st.composite
def hinges(draw):
    """A planar hinge: x above the edge ab, y below it, a point in each triangle."""
    length = draw(st.floats(min_value=0.5, max_value=2.0))
    x = (draw(st.floats(min_value=-1.0, max_value=3.0)),
         draw(st.floats(min_value=0.5, max_value=2.0)))
    y = (draw(st.floats(min_value=-1.0, max_value=3.0)),
         -draw(st.floats(min_value=0.5, max_value=2.0)))
    weights = st.floats(min_value=0.2, max_value=1.0)
    wp = np.array([draw(weights), draw(weights), draw(weights)])
    wq = np.array([draw(weights), draw(weights), draw(weights)])
    return length, x, y, wp / wp.sum(), wq / wq.sum()


def _planar_crossing(length, x, y, wp, wq):
    a, b = np.array([0.0, 0.0]), np.array([length, 0.0])
    p = wp @ np.array([a, b, x])
    q = wq @ np.array([a, b, y])
    lam = p[1] / (p[1] - q[1])
    return p, q, (p[0] + lam * (q[0] - p[0])) / length


# =======================================================================
# Points and paths
# =======================================================================

def test_simplex_point_normalizes_and_reduces():
    p = SimplexPoint.of(['c', 'a', 'b'], [0.5, 0.5, 0.0])
    assert p.simplex == SimplexId.of('a', 'b', 'c')
    assert p.carrier() == SimplexId.of('a', 'c')
    assert p.reduced().simplex == SimplexId.of('a', 'c')
    assert p.in_closed(SimplexId.of('a', 'c', 'd'))


@pytest.mark.parametrize("coords", [(0.5, 0.6), (-0.5, 1.5), (1.0,)])
def test_simplex_point_rejects_bad_coordinates(coords):
    with pytest.raises(MalformedInputError):
        SimplexPoint(SimplexId.of('a', 'b'), coords)


def test_segment_length_inside_a_unit_triangle(degree6):
    _, metric = degree6
    mid = SimplexPoint.on_edge('v1', 'v2', 0.5)
    assert segment_length(metric, SimplexPoint.vertex('o'), mid) == pytest.approx(math.sqrt(3) / 2)
    with pytest.raises(GeodesicError):
        segment_length(metric, SimplexPoint.of(['o', 'v1', 'v2'], [1 / 3] * 3),
                       SimplexPoint.of(['o', 'v4', 'v5'], [1 / 3] * 3))


def test_path_point_at_and_concatenate(degree6):
    _, metric = degree6
    o, v1, v2 = (SimplexPoint.vertex(v) for v in ('o', 'v1', 'v2'))
    first = PiecewisePath.through(metric, [o, v1])
    second = PiecewisePath.through(metric, [v1, v2])
    joined = first.concatenate(second)
    assert joined.length == pytest.approx(2.0)
    assert joined.point_at(metric, 0.25).close_to(SimplexPoint.on_edge('o', 'v1', 0.5))
    assert joined.reversed().start == v2
    assert path_length(joined, metric) == pytest.approx(joined.length)
    with pytest.raises(PreconditionError):
        second.concatenate(first)


# =======================================================================
# Unfolding
# =======================================================================

def test_unfolding_two_unit_triangles(degree6):
    K, metric = degree6
    fan = [SimplexId.of('o', 'v1', 'v2'), SimplexId.of('o', 'v2', 'v3')]
    unfolding = unfold_fan(K, metric, fan)
    assert np.linalg.norm(unfolding.coords('v1', 0) - unfolding.coords('v3', 1)) \
        == pytest.approx(math.sqrt(3))
    assert set(unfolding.edge(0)) == {'o', 'v2'}


def test_full_fan_around_a_flat_vertex_closes_up(degree6):
    _, metric = degree6
    labels = ['v1', 'v2', 'v3', 'v4', 'v5', 'v6', 'v1']
    fan = [SimplexId.of('o', u, v) for u, v in zip(labels, labels[1:])]
    unfolding = develop(metric, fan)
    assert unfolding.coords('v1', 0) == pytest.approx(unfolding.coords('v1', 5), abs=1e-12)


def test_fan_must_share_edges(degree6):
    K, metric = degree6
    with pytest.raises(FanError):
        unfold_fan(K, metric, [SimplexId.of('o', 'v1', 'v2'), SimplexId.of('o', 'v4', 'v5')])
    with pytest.raises(FanError):
        unfold_fan(K, metric, [SimplexId.of('v1', 'v2', 'v3')])


# =======================================================================
# Balance points
# =======================================================================

@settings(max_examples=150, deadline=None)
@given(hinge=hinges())
def test_closed_form_and_bisection_agree(hinge):
    length, x, y, wp, wq = hinge
    metric = _hinge_metric(length, x, y)
    p1 = SimplexPoint(TAU1, tuple(wp))
    q1 = SimplexPoint(TAU2, tuple(wq))
    _, _, expected = _planar_crossing(length, x, y, wp, wq)
    closed = balance_point_closed_form(metric, p1, q1, TAU1, TAU2)
    if 0.02 < expected < 0.98:
        assert isinstance(closed, BalancePoint)
        assert closed.parameter == pytest.approx(expected, abs=1e-9)
        assert closed.residual < 1e-9
        bisected = balance_point_bisection(metric, p1, q1, TAU1, TAU2)
        assert bisected.parameter == pytest.approx(closed.parameter, abs=1e-9)
        assert bisected.bracket < 1e-12
    elif expected < -0.02 or expected > 1.02:
        assert isinstance(closed, NoInteriorCrossing)
        with pytest.raises(NoInteriorCrossingError):
            balance_point_bisection(metric, p1, q1, TAU1, TAU2)


@settings(max_examples=100, deadline=None)
@given(hinge=hinges(), offset=st.floats(min_value=0.05, max_value=0.9))
def test_route_through_balance_point_is_strictly_shortest(hinge, offset):
    length, x, y, wp, wq = hinge
    metric = _hinge_metric(length, x, y)
    p1 = SimplexPoint(TAU1, tuple(wp))
    q1 = SimplexPoint(TAU2, tuple(wq))
    closed = balance_point_closed_form(metric, p1, q1, TAU1, TAU2)
    assume(isinstance(closed, BalancePoint))
    u = closed.parameter + offset if closed.parameter + offset < 1.0 else closed.parameter - offset
    assume(0.0 < u < 1.0)
    t = SimplexPoint.on_edge('a', 'b', u)
    check = detour_inequality_check(metric, p1, q1, closed.point, t)
    assert check.strict_inequality
    assert check.consistent
    assert check.angle_sum == pytest.approx(math.pi, abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(hinge=hinges())
def test_hinge_minimizer_matches_the_unfolded_segment(hinge):
    length, x, y, wp, wq = hinge
    metric = _hinge_metric(length, x, y)
    p1 = SimplexPoint(TAU1, tuple(wp))
    q1 = SimplexPoint(TAU2, tuple(wq))
    p, q, expected = _planar_crossing(length, x, y, wp, wq)
    assume(0.01 < expected < 0.99)
    hinge_min = hinge_minimizer(metric, p1, q1, 'a', 'b')
    assert not hinge_min.clamped
    assert hinge_min.parameter == pytest.approx(expected, abs=1e-9)
    assert hinge_min.length == pytest.approx(float(np.linalg.norm(p - q)), rel=1e-9)


def test_detour_check_rejects_coincident_points():
    metric = _hinge_metric(1.0, (0.5, 1.0), (0.5, -1.0))
    p1 = SimplexPoint(TAU1, (1 / 3, 1 / 3, 1 / 3))
    q1 = SimplexPoint(TAU2, (1 / 3, 1 / 3, 1 / 3))
    s = SimplexPoint.on_edge('a', 'b', 0.5)
    with pytest.raises(DegenerateInputError):
        detour_inequality_check(metric, p1, q1, s, s)


def test_balance_point_needs_a_shared_edge():
    metric = _hinge_metric(1.0, (0.5, 1.0), (0.5, -1.0))
    p1 = SimplexPoint(TAU1, (1 / 3, 1 / 3, 1 / 3))
    with pytest.raises(PreconditionError):
        balance_point_closed_form(metric, p1, p1, TAU1, TAU1)


@pytest.mark.parametrize("weights, hypothesis_weights, verdict", [
    ((1 / 3, 1 / 3, 1 / 3), (1 / 3, 1 / 3, 1 / 3), Verdict.PASS),
    ((0.1, 0.5, 0.4), (1 / 3, 1 / 3, 1 / 3), Verdict.FAIL),
    ((1 / 3, 1 / 3, 1 / 3), (0.1, 0.5, 0.4), Verdict.INCONCLUSIVE),
])
def test_extended_angle_check_on_a_flat_hinge(weights, hypothesis_weights, verdict):
    metric = _hinge_metric(1.0, (0.5, 1.0), (0.5, -1.0))
    p, q = SimplexPoint(TAU1, weights), SimplexPoint(TAU2, weights)
    p1, q1 = SimplexPoint(TAU1, hypothesis_weights), SimplexPoint(TAU2, hypothesis_weights)
    s = SimplexPoint.on_edge('a', 'b', 0.5)
    t = SimplexPoint.on_edge('a', 'b', 0.9)
    result = extended_angle_check(metric, p, q, p1, q1, s, t)
    assert result.verdict is verdict
    if verdict is Verdict.PASS:
        assert result.angle_sum == pytest.approx(math.pi, abs=1e-6)
    elif verdict is Verdict.FAIL:
        assert result.angle_sum == pytest.approx(2 * math.atan2(0.4, 0.2), abs=1e-6)
    else:
        assert result.hypothesis_sum < math.pi - 1e-3


# =======================================================================
# Geodesic solver, oracle and midpoints
# =======================================================================

def _centroid(*labels):
    return SimplexPoint.of(list(labels), [1.0 / len(labels)] * len(labels))


def test_flat_hexagon_distance(degree6):
    K, metric = degree6
    solver = GeodesicSolver(K, metric)
    p, q = _centroid('o', 'v1', 'v2'), _centroid('o', 'v3', 'v4')
    path = solver.geodesic(p, q)
    assert path.length == pytest.approx(1.0, abs=1e-8)
    path.validate(K, metric)
    assert solver.distance(q, p) == pytest.approx(1.0, abs=1e-8)


def test_geodesic_midpoint_halves_the_distance(degree6):
    K, metric = degree6
    solver = GeodesicSolver(K, metric)
    p, q = _centroid('o', 'v1', 'v2'), _centroid('o', 'v3', 'v4')
    m = geodesic_midpoint(solver, p, q)
    assert m.close_to(SimplexPoint.of(['o', 'v2', 'v3'], [2 / 3, 1 / 6, 1 / 6]), tol=1e-6)
    assert solver.distance(p, m) == pytest.approx(0.5, abs=1e-6)


def test_oracle_bounds_the_flat_distance(degree6):
    K, metric = degree6
    p, q = _centroid('o', 'v1', 'v2'), _centroid('o', 'v3', 'v4')
    oracle = brute_force_distance(K, metric, p, q, resolution=60)
    assert 1.0 - 1e-9 <= oracle <= 1.01


@pytest.mark.parametrize("p_weights, q_weights, expected", [
    # passes left of o, close enough that the seed bends at o
    ((0.2, 0.5, 0.3), (0.3, 0.3, 0.4), 1.3),
    ((0.5, 0.2, 0.3), (0.4, 0.5, 0.1), None),
    # straight through o
    ((0.1, 0.45, 0.45), (0.1, 0.45, 0.45), 0.9 * math.sqrt(3.0)),
])
def test_flat_hexagon_geodesics_are_planar_segments(degree6, p_weights, q_weights, expected):
    K, metric = degree6
    hexagon = {f"v{k + 1}": np.array([math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)])
               for k in range(6)}
    hexagon['o'] = np.zeros(2)
    p = SimplexPoint.of(['o', 'v5', 'v6'], p_weights)
    q = SimplexPoint.of(['o', 'v2', 'v3'], q_weights)
    planar = float(np.linalg.norm(
        sum(w * hexagon[v] for v, w in zip(['o', 'v5', 'v6'], p_weights))
        - sum(w * hexagon[v] for v, w in zip(['o', 'v2', 'v3'], q_weights))))
    if expected is not None:
        assert planar == pytest.approx(expected, rel=1e-12)
    path = GeodesicSolver(K, metric).geodesic(p, q)
    assert path.length == pytest.approx(planar, abs=1e-7)
    path.validate(K, metric)


def test_oracle_crosses_a_tetrahedron_between_opposite_edges():
    # x,y,a,b and c,d,u,v touch the middle tetrahedron a,b,c,d along opposite edges only
    K = build_complex([['a', 'b', 'x', 'y'], ['a', 'b', 'c', 'd'], ['c', 'd', 'u', 'v']])
    metric = MetricAssignment.standard(K)
    p = SimplexPoint.on_edge('x', 'y', 0.5)
    q = SimplexPoint.on_edge('u', 'v', 0.5)
    expected = 3.0 / math.sqrt(2.0)
    path = brute_force_path(K, metric, p, q, resolution=9)
    assert path.length == pytest.approx(expected, rel=1e-9)
    assert [point.carrier() for point in path.points] == [
        SimplexId.of('x', 'y'), SimplexId.of('a', 'b'), SimplexId.of('c', 'd'),
        SimplexId.of('u', 'v')]
    assert GeodesicSolver(K, metric).distance(p, q) == pytest.approx(expected, abs=1e-7)


def test_solver_rejects_points_outside_the_neighborhood(degree6):
    K, metric = degree6
    solver = GeodesicSolver(K.closed_star(SimplexId.of('o', 'v1', 'v2')), metric)
    with pytest.raises(GeodesicError):
        solver.geodesic(_centroid('o', 'v1', 'v2'), _centroid('o', 'v4', 'v5'))


def test_safe_midpoint_outside_the_collapsed_tetrahedron():
    K, metric = load_fixture('two_tetra')
    solver = GeodesicSolver(K, metric)
    sigma = SimplexId.of('a', 'b', 'c', 'd')
    p = SimplexPoint.of(['b', 'c', 'd', 'e'], [0.1, 0.1, 0.1, 0.7])
    q = SimplexPoint.of(['b', 'c', 'd', 'e'], [0.4, 0.1, 0.1, 0.4])
    path = solver.geodesic(p, q)
    assert path_avoids(path, sigma)
    m = safe_midpoint(solver, path, sigma)
    assert not isinstance(m, ResolutionExhausted)
    assert m.close_to(interpolate(p, q, 0.5), tol=1e-9)

    on_face = _centroid('b', 'c', 'd')
    with pytest.raises(PreconditionError):
        safe_midpoint(solver, solver.geodesic(on_face, q), sigma)


# =======================================================================
# Reroutes around a collapsed tetrahedron
# =======================================================================

SIGMA = SimplexId.of('a', 'b', 'c', 'd')
ALPHA = SimplexId.of('b', 'c', 'd')


def test_collapse_geometry_needs_a_free_face(regular_star):
    K, metric = regular_star
    with pytest.raises(PreconditionError):
        CollapseGeometry(K, metric, SIGMA, SimplexId.of('a', 'b', 'c'))
    with pytest.raises(PreconditionError):
        CollapseGeometry(K, metric, SIGMA, SimplexId.of('a', 'b'))
    geom = CollapseGeometry(K, metric, SIGMA, ALPHA)
    assert geom.apex == 'a'
    assert geom.radius == pytest.approx(1.0)
    assert geom.faces_at_apex == [SimplexId.of('a', 'b', 'c'), SimplexId.of('a', 'b', 'd'),
                                  SimplexId.of('a', 'c', 'd')]
    assert geom.attached(SimplexId.of('a', 'b', 'c')) == [SimplexId.of('a', 'b', 'c', 'e')]
    assert SIGMA not in geom.collapsed and ALPHA not in geom.collapsed


def test_crossing_between_opposite_fins(regular_star):
    K, metric = regular_star
    geom = CollapseGeometry(K, metric, SIGMA, ALPHA)
    p, q = _centroid('a', 'b', 'c', 'e'), _centroid('a', 'b', 'd', 'f')
    crossing = detect_crossing(geom, p, q)
    assert crossing is not None
    assert crossing.face_pair == (SimplexId.of('a', 'b', 'c'), SimplexId.of('a', 'b', 'd'))
    assert crossing.straight_length == pytest.approx(2.0 / 3.0, rel=1e-9)
    assert crossing.p1.close_to(SimplexPoint.of(['a', 'b', 'c'], [5 / 12, 5 / 12, 1 / 6]),
                                tol=1e-9)

    result = reroute_after_collapse(geom, p, q, crossing)
    assert result.direct.length == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-9)
    assert result.chosen.length >= crossing.straight_length - 1e-12
    assert result.chosen.length <= result.alternative.length + 3e-7
    assert result.margin == pytest.approx(abs(result.signed_margin))
    for segment_start, segment_end in result.chosen.segments():
        assert geom.collapsed.span(
            set(segment_start.carrier().vertices) | set(segment_end.carrier().vertices))


def test_crossing_refuses_endpoints_in_sigma(regular_star):
    K, metric = regular_star
    geom = CollapseGeometry(K, metric, SIGMA, ALPHA)
    with pytest.raises(PreconditionError):
        detect_crossing(geom, _centroid('a', 'b', 'c'), _centroid('a', 'b', 'd', 'f'))


def test_segment_inside_one_fin_does_not_cross(regular_star):
    K, metric = regular_star
    geom = CollapseGeometry(K, metric, SIGMA, ALPHA)
    p = SimplexPoint.of(['a', 'b', 'c', 'e'], [0.1, 0.1, 0.1, 0.7])
    q = SimplexPoint.of(['a', 'b', 'c', 'e'], [0.3, 0.3, 0.1, 0.3])
    assert detect_crossing(geom, p, q) is None
    with pytest.raises(PreconditionError):
        reroute_after_collapse(geom, p, q)


# weights on (a, b, c, e) and (a, b, d, f): close to the edge a,b, and close to c and d
NEAR_AB = (0.35, 0.35, 0.2, 0.1)
NEAR_CD = (0.2, 0.05, 0.6, 0.15)


def _mirrored(weights):
    return (SimplexPoint.of(['a', 'b', 'c', 'e'], weights),
            SimplexPoint.of(['a', 'b', 'd', 'f'], weights))


def _blend(fraction):
    return tuple((1.0 - fraction) * x + fraction * y for x, y in zip(NEAR_AB, NEAR_CD))


def _near_tie(geom, steps=40):
    """Endpoints where the two reroutes are as close as bisection gets them."""
    lo, hi = 0.0, 1.0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if reroute_after_collapse(geom, *_mirrored(_blend(mid))).signed_margin > 0:
            lo = mid
        else:
            hi = mid
    return _mirrored(_blend(lo))


def test_reroute_channels_near_an_edge_and_near_the_opposite_edge(regular_star):
    K, metric = regular_star
    geom = CollapseGeometry(K, metric, SIGMA, ALPHA)
    direct = reroute_after_collapse(geom, *_mirrored(NEAR_AB))
    assert direct.channel is RerouteChannel.THROUGH_S
    assert direct.signed_margin > 0.1
    detour = reroute_after_collapse(geom, *_mirrored(NEAR_CD))
    assert detour.channel is RerouteChannel.THROUGH_T_V
    assert detour.signed_margin < -0.1
    assert not direct.tie and not detour.tie


@pytest.mark.slow
@pytest.mark.parametrize("case, channel", [
    ('near_ab', RerouteChannel.THROUGH_S),
    ('near_cd', RerouteChannel.THROUGH_T_V),
    ('near_tie', None),
])
def test_reroute_agrees_with_the_oracle(regular_star, case, channel):
    K, metric = regular_star
    geom = CollapseGeometry(K, metric, SIGMA, ALPHA)
    if case == 'near_tie':
        p, q = _near_tie(geom)
    else:
        p, q = _mirrored(NEAR_AB if case == 'near_ab' else NEAR_CD)
    result = reroute_after_collapse(geom, p, q)
    if channel is None:
        assert abs(result.signed_margin) < 1e-6
        assert result.tie
    else:
        assert result.channel is channel
    oracle = brute_force_distance(geom.collapsed, metric, p, q, resolution=120)
    assert result.chosen.length <= oracle + 1e-7
    assert oracle == pytest.approx(result.chosen.length, rel=0.01)
