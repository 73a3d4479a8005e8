"""
Property A: no two equal-length reroutes through different surviving edges.

Collapsing (σ, α) leaves three faces of σ at the apex. A geodesic that
crossed σ is replaced by a route through the edge shared by its entry and
exit faces, or by a route through the two edges of the third face. The
property fails when both routes have the same length for some pair of
endpoints.

Besides exact ties among the samples, the signed margin (detour minus
direct) is tracked across samples that use the same tetrahedra and faces: a
sign change between two of them forces a tie on the segment joining them,
which is located by bisection.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.config import Tolerances, get_config
from ..core.exceptions import Cat0Error, PreconditionError
from ..core.logging import log_check_failure
from ..core.utils import derive_rng, ordered_map
from ..core.utils.enums import RerouteChannel, Verdict
from ..geodesics import (
    CollapseGeometry,
    RerouteResult,
    SimplexPoint,
    detect_crossing,
    interpolate,
    reroute_after_collapse,
)
from ..geometry import MetricAssignment, chord_length
from ..topology import SimplexId, SimplicialComplex
from .reports import CheckReport

logger = logging.getLogger("cat0.verification")

CHECK_NAME = 'property_a'


@dataclass(frozen=True)
class MarginSample:
    index: int
    p: SimplexPoint
    q: SimplexPoint
    result: Optional[RerouteResult] = None
    reason: Optional[str] = None

    @property
    def group(self) -> Optional[Tuple[SimplexId, ...]]:
        if self.result is None:
            return None
        c = self.result.crossing
        return (c.tau_in, c.tetra_p, c.tau_out, c.tetra_q)


def _draw(geom: CollapseGeometry, sides: List[Tuple[SimplexId, SimplexId]],
          rng: np.random.Generator, radius: float, max_attempts: int):
    """Endpoints in two tetrahedra glued to different faces at the apex."""
    first, second = rng.choice(len(sides), size=2, replace=False)
    (_, tetra_p), (_, tetra_q) = sides[int(first)], sides[int(second)]
    points = []
    for tetra in (tetra_p, tetra_q):
        apex = np.array([1.0 if v == geom.apex else 0.0 for v in tetra.vertices])
        for _ in range(max_attempts):
            coords = rng.dirichlet(np.ones(4))
            if chord_length(geom.metric, tetra.vertices, coords, apex) <= radius:
                points.append(SimplexPoint(tetra, tuple(coords)))
                break
        else:
            return None
    return points


def _tie_witness(result: RerouteResult, p: SimplexPoint, q: SimplexPoint,
                 source: str) -> Dict[str, Any]:
    return {
        'p': p.to_dict(),
        'q': q.to_dict(),
        'signed_margin': result.signed_margin,
        'through_s_length': result.direct.length,
        'through_t_v_length': result.detour.length,
        'faces': [result.crossing.tau_in.to_list(), result.crossing.tau_out.to_list()],
        'found_by': source,
    }


def _bisect(geom: CollapseGeometry, low: MarginSample, high: MarginSample,
            tolerances: Tolerances, scale: float,
            iterations: int) -> Optional[Tuple[RerouteResult, SimplexPoint, SimplexPoint]]:
    """Tie on the segment between two samples of opposite margin sign, if it stays crossing."""
    faces = (low.result.crossing.tau_in, low.result.crossing.tau_out)
    lo, hi = 0.0, 1.0
    sign_lo = np.sign(low.result.signed_margin)
    best = None
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        p = interpolate(low.p, high.p, mid)
        q = interpolate(low.q, high.q, mid)
        try:
            crossing = detect_crossing(geom, p, q, tolerances)
            if crossing is None or (crossing.tau_in, crossing.tau_out) != faces:
                return None
            result = reroute_after_collapse(geom, p, q, crossing, tolerances)
        except Cat0Error:
            return None
        best = (result, p, q)
        if abs(result.signed_margin) <= tolerances.witness * scale:
            break
        if np.sign(result.signed_margin) == sign_lo:
            lo = mid
        else:
            hi = mid
    return best


def property_a_check(
    K: SimplicialComplex,
    metric: MetricAssignment,
    sigma: SimplexId,
    alpha: SimplexId,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
    workers: Optional[int] = None,
    max_attempts: Optional[int] = None,
) -> CheckReport:
    """
    Look for endpoints whose two reroutes around the collapsed σ tie.

    Endpoints are drawn from tetrahedra glued to two different faces of σ at
    the apex, within the neighborhood radius (the longest edge of σ). Ties
    where both routes pass through the apex itself are the same path and do
    not count.

    Returns:
        fail with the offending p, q; inconclusive when no sampled segment
        crossed σ (more samples, or tetrahedra on two apex faces, are needed);
        pass otherwise. The worst violation is the equality tolerance minus
        the smallest relative margin seen, when positive.

    Raises:
        PreconditionError: if (σ, α) is not a free tetrahedron-triangle pair
    """
    config = get_config()
    n_samples = n_samples if n_samples is not None else config.samples
    seed = seed if seed is not None else config.seed
    tolerances = tolerances or Tolerances.from_config(config)
    workers = workers if workers is not None else config.workers
    max_attempts = max_attempts if max_attempts is not None else config.max_attempts
    if n_samples <= 0:
        raise PreconditionError("At least one sample is needed",
                                operation=CHECK_NAME, subject=n_samples)

    geom = CollapseGeometry(K, metric, sigma, alpha)
    scale = 2.0 * geom.radius
    equality = tolerances.property_a_equality
    sides = [(f, t) for f in geom.faces_at_apex for t in geom.attached(f)]
    details: Dict[str, Any] = {
        'sigma': sigma.to_list(), 'alpha': alpha.to_list(), 'apex': geom.apex,
        'radius': geom.radius, 'samples': n_samples, 'seed': seed,
    }
    if len({f for f, _ in sides}) < 2:
        details['guidance'] = ("Tetrahedra are glued to fewer than two faces of σ at the "
                               "apex, so no geodesic can cross σ")
        return CheckReport(check=CHECK_NAME, verdict=Verdict.INCONCLUSIVE, details=details)

    def evaluate(index: int) -> Optional[MarginSample]:
        rng = derive_rng(seed, index)
        drawn = _draw(geom, sides, rng, geom.radius, max_attempts)
        if drawn is None:
            return None
        p, q = drawn
        try:
            crossing = detect_crossing(geom, p, q, tolerances)
            if crossing is None:
                return MarginSample(index, p, q, reason='no_crossing')
            return MarginSample(index, p, q, reroute_after_collapse(geom, p, q, crossing,
                                                                    tolerances))
        except Cat0Error as exc:
            return MarginSample(index, p, q, reason=exc.error_code)

    samples = [s for s in ordered_map(evaluate, list(range(n_samples)), workers) if s]
    crossing = [s for s in samples if s.result is not None]
    details['crossing_samples'] = len(crossing)
    details['skipped'] = sorted({s.reason for s in samples if s.reason})
    if not crossing:
        details['guidance'] = "No sampled geodesic crossed σ; increase the sample count"
        return CheckReport(check=CHECK_NAME, verdict=Verdict.INCONCLUSIVE, details=details)

    candidates = [(s.result, s.p, s.q, 'sample') for s in crossing]
    groups: Dict[Tuple[SimplexId, ...], List[MarginSample]] = {}
    for s in crossing:
        groups.setdefault(s.group, []).append(s)
    for key in sorted(groups):
        members = [s for s in groups[key] if not s.result.coincident]
        positive = next((s for s in members if s.result.signed_margin > 0), None)
        negative = next((s for s in members if s.result.signed_margin < 0), None)
        if positive is None or negative is None:
            continue
        found = _bisect(geom, positive, negative, tolerances, scale,
                        config.bisection_iterations)
        if found is not None:
            candidates.append((*found, 'bisection'))

    genuine = [c for c in candidates if not c[0].coincident]
    worst = min(genuine, key=lambda c: abs(c[0].signed_margin)) if genuine else None
    smallest = abs(worst[0].signed_margin) / scale if worst else float('inf')
    details['min_relative_margin'] = smallest if worst else None
    details['channels'] = {
        channel.value: sum(1 for s in crossing if s.result.channel is channel)
        for channel in RerouteChannel
    }
    if worst is not None and smallest <= equality:
        witness = _tie_witness(worst[0], worst[1], worst[2], worst[3])
        report = CheckReport(check=CHECK_NAME, verdict=Verdict.FAIL,
                             worst_violation=equality - smallest, witness=witness,
                             details=details)
        log_check_failure(logger, CHECK_NAME, report.verdict.value, report.worst_violation,
                          witness)
        return report
    return CheckReport(check=CHECK_NAME, verdict=Verdict.PASS, details=details)
