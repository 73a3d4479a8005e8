"""
Link condition: angle sums around interior edges and interior vertices.
"""

import logging
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..core.config import Tolerances
from ..core.logging import log_check_failure
from ..core.utils.enums import Verdict
from ..geometry import MetricAssignment, comparison_angle
from ..topology import SimplexId, SimplicialComplex
from .reports import CheckReport

logger = logging.getLogger("cat0.verification")

CHECK_NAME = 'edge_link'


def is_cycle(link: SimplicialComplex) -> bool:
    """True when the link is a single closed circuit of edges."""
    if len(link) == 0 or link.dimension != 1:
        return False
    labels = link.vertices
    edges = link.simplices_of_dim(1)
    if len(edges) != len(labels) or len(labels) < 2:
        return False
    index = {v: i for i, v in enumerate(labels)}
    rows = [index[e.vertices[0]] for e in edges]
    cols = [index[e.vertices[1]] for e in edges]
    degree = np.bincount(rows + cols, minlength=len(labels))
    if np.any(degree != 2):
        return False
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(labels), len(labels)))
    count, _ = connected_components(graph, directed=False)
    return count == 1


def dihedral_angle(metric: MetricAssignment, tetrahedron: SimplexId, edge: SimplexId) -> float:
    """Angle between the two faces of a tetrahedron meeting at an edge."""
    coords = dict(zip(tetrahedron.vertices, metric.realize(tetrahedron)))
    u, v = edge.vertices
    w, x = [c for c in tetrahedron.vertices if c not in edge.vertices]
    axis = coords[v] - coords[u]
    axis = axis / np.linalg.norm(axis)
    first = coords[w] - coords[u]
    second = coords[x] - coords[u]
    first = first - (first @ axis) * axis
    second = second - (second @ axis) * axis
    return float(np.arctan2(np.linalg.norm(np.cross(first, second)), first @ second))


def vertex_angle(metric: MetricAssignment, triangle: SimplexId, vertex: str,
                 tol: float) -> float:
    x, y = [c for c in triangle.vertices if c != vertex]
    return comparison_angle(metric.length(x, y), metric.length(vertex, x),
                            metric.length(vertex, y), tol)


def edge_link_check(K: SimplicialComplex, metric: MetricAssignment,
                    tolerances: Optional[Tolerances] = None) -> CheckReport:
    """
    Every interior edge needs dihedral angles summing to at least 2π.

    An edge is interior when its link is a cycle. Vertices without
    tetrahedra whose link is a cycle of triangles are held to the same bound
    with plane angles. Boundary edges and vertices are unconstrained.

    Raises:
        InvalidMetricError: if a tetrahedron or triangle is not realizable
    """
    tolerances = tolerances or Tolerances.from_config()
    full_turn = 2.0 * np.pi
    worst = 0.0
    min_slack = None
    witness = None
    interior_edges: List[List[str]] = []
    interior_vertices: List[str] = []

    def record(slack: float, candidate: Dict[str, Any]) -> None:
        nonlocal worst, min_slack, witness
        if min_slack is None or slack < min_slack:
            min_slack = slack
        if -slack > worst:
            worst = -slack
            witness = candidate

    for e in K.simplices_of_dim(1):
        if not is_cycle(K.link(e)):
            continue
        tetrahedra = sorted(c for c in K.cofaces(e) if c.dimension == 3)
        if not tetrahedra:
            continue
        interior_edges.append(e.to_list())
        total = sum(dihedral_angle(metric, t, e) for t in tetrahedra)
        record(total - full_turn, {'edge': e.to_list(), 'angle_sum': total,
                                   'tetrahedra': [t.to_list() for t in tetrahedra]})

    for label in K.vertices:
        v = SimplexId.of(label)
        cofaces = K.cofaces(v)
        if any(c.dimension == 3 for c in cofaces) or not is_cycle(K.link(v)):
            continue
        triangles = sorted(c for c in cofaces if c.dimension == 2)
        interior_vertices.append(label)
        total = sum(vertex_angle(metric, t, label, tolerances.planar) for t in triangles)
        record(total - full_turn, {'vertex': label, 'angle_sum': total,
                                   'triangles': [t.to_list() for t in triangles]})

    verdict = Verdict.FAIL if worst > tolerances.check else Verdict.PASS
    report = CheckReport(
        check=CHECK_NAME,
        verdict=verdict,
        worst_violation=worst,
        witness=witness if verdict is Verdict.FAIL else None,
        details={
            'interior_edges': interior_edges,
            'interior_vertices': interior_vertices,
            'min_slack': min_slack,
        },
    )
    if report.failed:
        log_check_failure(logger, CHECK_NAME, verdict.value, worst, witness)
    return report
