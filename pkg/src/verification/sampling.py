"""
Shared machinery of the sampled checks: drawing points in a neighborhood,
measuring triangle sides (rerouted when they crossed the removed σ) and
classifying triangles into strata.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import Tolerances
from ..core.utils.enums import RerouteChannel, Stratum, Verdict
from ..geodesics import (
    CollapseGeometry,
    GeodesicSolver,
    PiecewisePath,
    RerouteResult,
    SimplexPoint,
    detect_crossing,
    reroute_after_collapse,
)
from ..geometry import chord_length
from .reports import NeighborhoodSpec

logger = logging.getLogger("cat0.verification")


class InconclusiveSample(Exception):
    """A sample that cannot be decided; carries a short reason code."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def sample_point(spec: NeighborhoodSpec, rng: np.random.Generator,
                 max_attempts: int) -> SimplexPoint:
    """
    A point of the sampling domain within distance r of the center.

    A maximal simplex is chosen uniformly and a point drawn from the flat
    Dirichlet distribution on it; draws outside the ball are rejected.

    Raises:
        InconclusiveSample: if every attempt fell outside the ball
    """
    domain = spec.domain
    for _ in range(max_attempts):
        simplex = domain[int(rng.integers(len(domain)))]
        coords = rng.dirichlet(np.ones(len(simplex.vertices)))
        center = np.array([1.0 if v == spec.center else 0.0 for v in simplex.vertices])
        if chord_length(spec.metric, simplex.vertices, coords, center) <= spec.radius:
            return SimplexPoint(simplex, tuple(coords))
    raise InconclusiveSample('sampling_exhausted')


def collapse_geometry(spec: NeighborhoodSpec) -> Optional[CollapseGeometry]:
    """Reroute geometry of the removed pair, when it removed a tetrahedron."""
    if spec.removed is None or spec.removed.coface.dimension != 3:
        return None
    return CollapseGeometry(spec.K, spec.metric, spec.removed.coface, spec.removed.free_face)


@dataclass(frozen=True)
class Side:
    path: PiecewisePath
    reroute: Optional[RerouteResult] = None

    @property
    def length(self) -> float:
        return self.path.length


class SideOracle:
    """Geodesic sides within a neighborhood, rerouted around the removed σ."""

    def __init__(self, spec: NeighborhoodSpec, tolerances: Tolerances,
                 solver: Optional[GeodesicSolver] = None):
        self.spec = spec
        self.tolerances = tolerances
        self.solver = solver or GeodesicSolver(spec.star, spec.metric, tolerances=tolerances)
        self.geom = collapse_geometry(spec)

    def side(self, x: SimplexPoint, y: SimplexPoint) -> Side:
        """
        Shortest path from x to y in the current complex.

        Raises:
            InconclusiveSample: if a reroute is beaten by the solver path
            CrossingError, GeodesicError: from the underlying computations
        """
        path = self.solver.geodesic(x, y)
        if self.geom is None:
            return Side(path)
        crossing = detect_crossing(self.geom, x, y, self.tolerances)
        if crossing is None:
            return Side(path)
        result = reroute_after_collapse(self.geom, x, y, crossing, self.tolerances)
        slack = self.tolerances.check * self.spec.diameter
        if path.length < result.chosen.length - slack:
            raise InconclusiveSample('reroute_not_shortest')
        chosen = result.chosen if result.chosen.length <= path.length else path
        return Side(chosen, result)

    def distance(self, x: SimplexPoint, y: SimplexPoint) -> float:
        return self.solver.distance(x, y)


def classify(sides: Sequence[Side]) -> Stratum:
    """Stratum of a triangle from which sides were rerouted and how."""
    rerouted = [s.reroute for s in sides if s.reroute is not None]
    if not rerouted:
        return Stratum.NO_CROSSING
    direct = [r.channel is RerouteChannel.THROUGH_S for r in rerouted]
    if len(rerouted) == 1:
        return Stratum.SINGLE_DIRECT if direct[0] else Stratum.SINGLE_DETOUR
    if len(rerouted) == 3:
        return Stratum.TRIPLE
    first, second = (frozenset(r.crossing.face_pair) for r in rerouted)
    shared = first == second
    if all(direct):
        return Stratum.DOUBLE_SHARED_DIRECT if shared else Stratum.DOUBLE_SPLIT_DIRECT
    if not any(direct):
        return Stratum.DOUBLE_DETOUR
    return Stratum.DOUBLE_SHARED_MIXED if shared else Stratum.DOUBLE_SPLIT_MIXED


def comparison_fractions(grid: int) -> List[float]:
    """`grid` evenly spaced interior parameters; 3 gives the quartiles."""
    return [(i + 1) / (grid + 1) for i in range(grid)]


def aggregate(verdicts: Sequence[Verdict]) -> Verdict:
    """Any failing sample fails the check; otherwise one passing sample suffices."""
    if any(v is Verdict.FAIL for v in verdicts):
        return Verdict.FAIL
    if any(v is Verdict.PASS for v in verdicts):
        return Verdict.PASS
    return Verdict.INCONCLUSIVE


def verdict_counts(verdicts: Sequence[Verdict]) -> Dict[str, int]:
    counts = Counter(v.value for v in verdicts)
    return {v.value: counts.get(v.value, 0) for v in Verdict}


def stratum_counts(strata: Sequence[Optional[Stratum]]) -> Tuple[Dict[str, int], List[str]]:
    """Per-stratum sample counts and the strata no sample reached."""
    counts = Counter(s.value for s in strata if s is not None)
    table = {s.value: counts.get(s.value, 0) for s in Stratum}
    return table, [name for name, n in table.items() if n == 0]
