"""Realization of metric simplices and flat comparison geometry."""

import math

import numpy as np
import pytest

from src.core.exceptions import (
    DegenerateInputError,
    DegenerateSimplexError,
    DomainError,
    InvalidMetricError,
    MalformedInputError,
)
from src.core.utils.enums import AleksandrovCase, Direction
from src.geometry import (
    ComparisonTriangle,
    FourTuple,
    MetricAssignment,
    aleksandrov_lemma,
    alexandrov_angle_estimate,
    cayley_menger_determinant,
    chord_length,
    comparison_angle,
    planar_angle,
    realize_tetrahedron,
    realize_triangle,
    simplex_volume_squared,
    subembedding_check,
    tetrahedron_volume,
    triangle_curvature,
)
from src.topology import SimplexId, build_complex

try:
    from hypothesis import assume, given, settings
    from hypothesis import strategies as st
except ModuleNotFoundError:  # pragma: no cover - environment-specific fallback
    pytest.skip("hypothesis is required for property-based tests", allow_module_level=True)


COORD = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)
POINT2 = st.tuples(COORD, COORD)
POINT3 = st.tuples(COORD, COORD, COORD)


def _pairwise(points):
    pts = np.asarray(points, dtype=float)
    return pts, np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)


# =======================================================================
# Cayley–Menger and realization
# =======================================================================

def test_cayley_menger_of_unit_simplices():
    assert cayley_menger_determinant(np.ones((4, 4)) - np.eye(4)) == pytest.approx(4.0)
    assert cayley_menger_determinant(np.ones((3, 3)) - np.eye(3)) == pytest.approx(-3.0)
    assert simplex_volume_squared(np.ones((4, 4)) - np.eye(4)) == pytest.approx(1.0 / 72.0)


def test_realize_triangle_places_vertices_canonically():
    coords = realize_triangle(3.0, 4.0, 5.0)
    assert coords[0] == pytest.approx([0.0, 0.0])
    assert coords[1] == pytest.approx([3.0, 0.0])
    assert coords[2][1] > 0
    assert np.linalg.norm(coords[2] - coords[1]) == pytest.approx(4.0)
    assert np.linalg.norm(coords[2]) == pytest.approx(5.0)


def test_realize_triangle_errors():
    with pytest.raises(InvalidMetricError):
        realize_triangle(1.0, 1.0, 3.0)
    with pytest.raises(DegenerateSimplexError):
        realize_triangle(1.0, 1.0, 2.0)
    with pytest.raises(DegenerateSimplexError):
        realize_triangle(0.0, 1.0, 1.0)


def test_unrealizable_tetrahedron_is_rejected():
    # five unit edges allow at most sqrt(3) for the sixth
    with pytest.raises(InvalidMetricError):
        realize_tetrahedron([1.0, 1.0, 1.0, 1.0, 1.0, 1.9])


@settings(max_examples=60, deadline=None)
@given(points=st.lists(POINT3, min_size=4, max_size=4))
def test_tetrahedron_realization_reproduces_lengths(points):
    pts, dist = _pairwise(points)
    volume = abs(np.linalg.det(pts[1:] - pts[0])) / 6.0
    assume(volume > 0.05)
    lengths = [dist[0, 1], dist[0, 2], dist[0, 3], dist[1, 2], dist[1, 3], dist[2, 3]]
    coords = realize_tetrahedron(lengths)
    _, rebuilt = _pairwise(coords)
    assert rebuilt == pytest.approx(dist, abs=1e-6)
    assert tetrahedron_volume(coords) == pytest.approx(volume, rel=1e-6)


# =======================================================================
# Metric assignments
# =======================================================================

def test_metric_rejects_non_positive_lengths():
    with pytest.raises(InvalidMetricError):
        MetricAssignment.from_pairs({('a', 'b'): 0.0})
    with pytest.raises(InvalidMetricError):
        MetricAssignment({SimplexId.of('a', 'b', 'c'): 1.0})


def test_metric_lookup_is_order_free():
    metric = MetricAssignment.from_pairs({('b', 'a'): 2.5})
    assert metric.length('a', 'b') == metric.length('b', 'a') == 2.5
    assert metric.length('a', 'a') == 0.0
    with pytest.raises(InvalidMetricError):
        metric.length('a', 'c')


def test_validate_names_the_offending_simplex():
    K = build_complex([['a', 'b', 'c']])
    missing = MetricAssignment.from_pairs({('a', 'b'): 1.0, ('b', 'c'): 1.0})
    with pytest.raises(InvalidMetricError):
        missing.validate(K)
    extra = MetricAssignment.from_pairs({('a', 'b'): 1.0, ('b', 'c'): 1.0, ('a', 'c'): 1.0,
                                         ('a', 'd'): 1.0})
    with pytest.raises(InvalidMetricError):
        extra.validate(K)
    flat = MetricAssignment.from_pairs({('a', 'b'): 1.0, ('b', 'c'): 1.0, ('a', 'c'): 2.0})
    with pytest.raises(InvalidMetricError) as excinfo:
        flat.validate(K)
    assert excinfo.value.details['simplex'] == ['a', 'b', 'c']


def test_validate_rejects_unrealizable_tetrahedron():
    K = build_complex([['a', 'b', 'c', 'd']])
    lengths = {(u, v): 1.0 for u, v in [('a', 'b'), ('a', 'c'), ('a', 'd'), ('b', 'c'),
                                        ('b', 'd')]}
    lengths[('c', 'd')] = 1.9
    with pytest.raises(InvalidMetricError):
        MetricAssignment.from_pairs(lengths).validate(K)


def test_chord_length_matches_realization(tetra):
    K, metric = tetra
    sigma = SimplexId.of('a', 'b', 'c', 'd')
    coords = metric.realize(sigma)
    x = np.array([0.1, 0.2, 0.3, 0.4])
    y = np.array([0.4, 0.3, 0.2, 0.1])
    expected = float(np.linalg.norm(x @ coords - y @ coords))
    assert chord_length(metric, sigma.vertices, x, y) == pytest.approx(expected, rel=1e-12)


# =======================================================================
# Comparison triangles and angles
# =======================================================================

def test_comparison_angle_of_right_triangle():
    assert comparison_angle(5.0, 3.0, 4.0) == pytest.approx(math.pi / 2)
    assert comparison_angle(1.0, 1.0, 1.0) == pytest.approx(math.pi / 3)
    with pytest.raises(InvalidMetricError):
        comparison_angle(3.0, 1.0, 1.0)


def test_comparison_triangle_angles_sum_to_pi():
    tri = ComparisonTriangle.from_lengths(3.0, 4.0, 5.0)
    assert tri.angle2 == pytest.approx(math.pi / 2)
    assert tri.curvature == pytest.approx(0.0, abs=1e-12)
    pts = tri.points()
    assert np.linalg.norm(pts[1] - pts[2]) == pytest.approx(4.0)
    assert tri.comparison_point(1, 2, 0.5) == pytest.approx([1.5, 0.0])


@settings(max_examples=100, deadline=None)
@given(points=st.lists(POINT2, min_size=3, max_size=3))
def test_flat_triangles_have_zero_curvature(points):
    p, q, r = (np.asarray(pt) for pt in points)
    area2 = abs((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))
    assume(area2 > 1e-3)
    angles = (planar_angle(p, q, r), planar_angle(q, r, p), planar_angle(r, p, q))
    assert triangle_curvature(*angles) == pytest.approx(0.0, abs=1e-12)


def test_straight_rays_give_their_angle():
    theta = 1.1
    u = np.array([1.0, 0.0])
    v = np.array([math.cos(theta), math.sin(theta)])
    estimate = alexandrov_angle_estimate(lambda s: s * u, lambda t: t * v, t0=1.0, halvings=8)
    assert estimate.value == pytest.approx(theta, abs=1e-7)
    assert estimate.uncertainty < 1e-7
    assert estimate.samples_used == 25


def test_angle_estimate_needs_positive_parameter():
    with pytest.raises(DomainError):
        alexandrov_angle_estimate(lambda s: (s, 0.0), lambda t: (0.0, t), t0=0.0, halvings=4)


# =======================================================================
# Aleksandrov's lemma
# =======================================================================

def test_aleksandrov_greater_case():
    result = aleksandrov_lemma(a=(2.0, 1.0), b=(0.0, 0.0), c=(2.0, -1.0), d=(1.0, 0.0))
    assert result.case is AleksandrovCase.GREATER_PI
    assert result.directions() == [Direction.GREATER] * 3
    assert result.consistent()


def test_aleksandrov_equal_case():
    result = aleksandrov_lemma(a=(-1.0, 1.0), b=(0.0, -1.0), c=(1.0, -1.0), d=(0.0, 0.0))
    assert result.case is AleksandrovCase.EQUAL_PI
    assert result.consistent()


def test_aleksandrov_needs_opposite_sides():
    with pytest.raises(DegenerateInputError):
        aleksandrov_lemma(a=(1.0, 1.0), b=(0.0, 0.0), c=(2.0, 1.0), d=(1.0, 0.0))
    with pytest.raises(DegenerateInputError):
        aleksandrov_lemma(a=(1.0, 1.0), b=(0.0, 0.0), c=(1.0, -1.0), d=(0.0, 0.0))


@settings(max_examples=200, deadline=None)
@given(
    d_x=st.floats(min_value=0.5, max_value=5.0),
    a=st.tuples(st.floats(min_value=-5.0, max_value=5.0), st.floats(min_value=0.1, max_value=5.0)),
    c=st.tuples(st.floats(min_value=-5.0, max_value=5.0),
                st.floats(min_value=-5.0, max_value=-0.1)),
)
def test_aleksandrov_comparisons_follow_the_angle_sum(d_x, a, c):
    try:
        result = aleksandrov_lemma(a=a, b=(0.0, 0.0), c=c, d=(d_x, 0.0))
    except DegenerateInputError:
        assume(False)
    assume(result.case is AleksandrovCase.EQUAL_PI
           or abs(result.angle_sum_at_d - math.pi) > 1e-6)
    assert result.consistent(), [cmp.to_dict() for cmp in result.comparisons]


# =======================================================================
# Four-point subembeddings
# =======================================================================

@settings(max_examples=100, deadline=None)
@given(points=st.lists(POINT2, min_size=4, max_size=4))
def test_planar_four_tuples_have_subembeddings(points):
    x1, y1, x2, y2 = (np.asarray(p) for p in points)
    _, dist = _pairwise(points)
    assume(dist[np.triu_indices(4, 1)].min() > 0.1)
    axis = (x2 - x1) / np.linalg.norm(x2 - x1)
    for y in (y1, y2):
        offset = y - x1
        assume(abs(offset[0] * axis[1] - offset[1] * axis[0]) > 0.1)
    result = subembedding_check(FourTuple.from_points(x1, y1, x2, y2), tol=1e-9)
    assert result.exists
    assert result.diagonal_x >= np.linalg.norm(x2 - x1) - 1e-9


def test_spherical_four_tuple_has_no_subembedding():
    # x1, x2 antipodal at distance 2 with y1, y2 both at distance 1 from each
    t = FourTuple(x1y1=1.0, x1y2=1.0, x2y1=1.0, x2y2=1.0, x1x2=2.0, y1y2=2.0)
    result = subembedding_check(t)
    assert not result.exists
    assert result.to_dict() == {'exists': False}


def test_four_tuple_rejects_negative_distance():
    with pytest.raises(MalformedInputError):
        FourTuple(1.0, 1.0, 1.0, 1.0, -1.0, 1.0)
