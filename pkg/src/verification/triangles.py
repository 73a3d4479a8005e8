"""
Sampled CAT(0) inequality on geodesic triangles of a neighborhood.

For every sampled triangle △(p, q, r) the comparison triangle is built from
the three side lengths, and points x on [p, q], y on [p, r] taken at the
comparison grid fractions must satisfy d(x, y) <= |x̄ ȳ|. Violations are
measured relative to the neighborhood diameter.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.config import Tolerances, get_config
from ..core.exceptions import Cat0Error, PreconditionError
from ..core.logging import log_check_failure
from ..core.utils import derive_rng, ordered_map
from ..core.utils.enums import Stratum, Verdict
from ..geodesics import SimplexPoint
from ..geometry import ComparisonTriangle, triangle_curvature
from .reports import CheckReport, NeighborhoodSpec
from .sampling import (
    InconclusiveSample,
    SideOracle,
    aggregate,
    classify,
    comparison_fractions,
    sample_point,
    stratum_counts,
    verdict_counts,
)

logger = logging.getLogger("cat0.verification")

CHECK_NAME = 'cat0_triangle'


@dataclass(frozen=True)
class TriangleSample:
    index: int
    verdict: Verdict
    violation: float = 0.0
    stratum: Optional[Stratum] = None
    curvature: Optional[float] = None
    witness: Optional[Dict[str, Any]] = None
    reason: Optional[str] = None


def _spatial_angle(apex: np.ndarray, u: np.ndarray, v: np.ndarray) -> float:
    a, b = u - apex, v - apex
    return float(np.arctan2(np.linalg.norm(np.cross(a, b)), a @ b))


def flat_curvature(spec: NeighborhoodSpec, p: SimplexPoint, q: SimplexPoint,
                   r: SimplexPoint) -> Optional[float]:
    """Angle sum minus π of a triangle lying in one simplex, realized directly."""
    span = set(p.carrier().vertices) | set(q.carrier().vertices) | set(r.carrier().vertices)
    host = next((m for m in spec.domain if span <= set(m.vertices)), None)
    if host is None:
        return None
    coords = spec.metric.realize(host)
    if coords.shape[1] < 3:
        coords = np.pad(coords, ((0, 0), (0, 3 - coords.shape[1])))
    a, b, c = (x.coords_in(host.vertices) @ coords for x in (p, q, r))
    return triangle_curvature(_spatial_angle(a, b, c), _spatial_angle(b, c, a),
                              _spatial_angle(c, a, b))


class _TriangleSampler:
    def __init__(self, spec: NeighborhoodSpec, seed: int, tolerances: Tolerances,
                 grid: int, max_attempts: int):
        self.spec = spec
        self.seed = seed
        self.tolerances = tolerances
        self.fractions = comparison_fractions(grid)
        self.max_attempts = max_attempts
        self.oracle = SideOracle(spec, tolerances)

    def draw(self, index: int):
        rng = derive_rng(self.seed, index)
        points = [sample_point(self.spec, rng, self.max_attempts) for _ in range(3)]
        p, q, r = points
        sides = [self.oracle.side(p, q), self.oracle.side(p, r), self.oracle.side(q, r)]
        return points, sides

    def evaluate(self, index: int, only: Optional[set] = None) -> Optional[TriangleSample]:
        """Check one triangle; with `only`, skip triangles outside those strata."""
        try:
            (p, q, r), (pq, pr, qr) = self.draw(index)
        except InconclusiveSample as exc:
            return None if only else TriangleSample(index, Verdict.INCONCLUSIVE, reason=exc.reason)
        except Cat0Error as exc:
            return None if only else TriangleSample(index, Verdict.INCONCLUSIVE,
                                                    reason=exc.error_code)
        stratum = classify([pq, pr, qr])
        if only is not None and stratum not in only:
            return None
        try:
            triangle = ComparisonTriangle.from_lengths(pq.length, qr.length, pr.length,
                                                       self.tolerances.planar)
            worst, witness = 0.0, None
            metric = self.spec.metric
            for i, fi in enumerate(self.fractions):
                for fj in self.fractions[i:]:
                    x = pq.path.point_at(metric, fi)
                    y = pr.path.point_at(metric, fj)
                    actual = self.oracle.distance(x, y)
                    bound = float(np.linalg.norm(triangle.comparison_point(1, 2, fi)
                                                 - triangle.comparison_point(1, 3, fj)))
                    excess = (actual - bound) / self.spec.diameter
                    if excess > worst:
                        worst = excess
                        witness = {
                            'p': p.to_dict(), 'q': q.to_dict(), 'r': r.to_dict(),
                            'x': x.to_dict(), 'y': y.to_dict(),
                            'fractions': [fi, fj],
                            'distance': actual, 'comparison_distance': bound,
                            'stratum': stratum.value,
                        }
        except InconclusiveSample as exc:
            return TriangleSample(index, Verdict.INCONCLUSIVE, stratum=stratum, reason=exc.reason)
        except Cat0Error as exc:
            return TriangleSample(index, Verdict.INCONCLUSIVE, stratum=stratum,
                                  reason=exc.error_code)
        verdict = Verdict.FAIL if worst > self.tolerances.check else Verdict.PASS
        return TriangleSample(
            index=index,
            verdict=verdict,
            violation=worst,
            stratum=stratum,
            curvature=flat_curvature(self.spec, p, q, r),
            witness=witness if verdict is Verdict.FAIL else None,
        )


def _draw_in_stratum(sampler: _TriangleSampler, stratum: Stratum, n_samples: int,
                     max_attempts: int) -> Tuple[Optional[TriangleSample], int]:
    """First triangle of `stratum` among its reserved draws, and the draws used."""
    start = n_samples + list(Stratum).index(stratum) * max_attempts
    for used, index in enumerate(range(start, start + max_attempts), start=1):
        sample = sampler.evaluate(index, only={stratum})
        if sample is not None:
            return sample, used
    return None, max_attempts


def cat0_triangle_sample_check(
    spec: NeighborhoodSpec,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
    comparison_grid: Optional[int] = None,
    workers: Optional[int] = None,
    max_attempts: Optional[int] = None,
) -> CheckReport:
    """
    Sample geodesic triangles of a neighborhood and test the CAT(0) inequality.

    When a tetrahedron was removed, every stratum no sample reached gets its
    own rejection sampler: up to `max_attempts` further draws from a block of
    indices reserved for that stratum, keeping the first triangle that lands
    in it. Strata still empty afterwards are listed as empty.

    Args:
        spec: The neighborhood (U, or U' after a collapse)
        n_samples: Triangles to draw (config `sampling.samples`)
        seed: Master seed; sample i uses a generator derived from (seed, i)
        comparison_grid: Comparison points per side (3 = quartiles)

    Returns:
        Report whose worst violation is the largest relative excess
        d(x, y) - |x̄ ȳ| over all decided samples
    """
    config = get_config()
    n_samples = n_samples if n_samples is not None else config.samples
    seed = seed if seed is not None else config.seed
    tolerances = tolerances or Tolerances.from_config(config)
    grid = comparison_grid if comparison_grid is not None else config.comparison_grid
    workers = workers if workers is not None else config.workers
    max_attempts = max_attempts if max_attempts is not None else config.max_attempts
    if n_samples <= 0:
        raise PreconditionError("At least one sample is needed",
                                operation=CHECK_NAME, subject=n_samples)

    if not spec.domain:
        logger.info(f"Empty sampling domain around {spec.center}; passing vacuously")
        return CheckReport(check=CHECK_NAME, verdict=Verdict.PASS,
                           details={'vacuous': True, 'neighborhood': spec.to_dict()})

    sampler = _TriangleSampler(spec, seed, tolerances, grid, max_attempts)
    samples: List[TriangleSample] = ordered_map(sampler.evaluate, list(range(n_samples)),
                                                workers)

    details: Dict[str, Any] = {'neighborhood': spec.to_dict(), 'samples': n_samples,
                               'seed': seed, 'comparison_grid': grid}
    if sampler.oracle.geom is not None:
        _, missing = stratum_counts([s.stratum for s in samples])
        draws: Dict[str, int] = {}
        for name in missing:
            extra, draws[name] = _draw_in_stratum(sampler, Stratum(name), n_samples, max_attempts)
            if extra is not None:
                samples.append(extra)
        counts, empty = stratum_counts([s.stratum for s in samples])
        details['strata'] = counts
        details['empty_strata'] = empty
        details['stratified_draws'] = draws

    verdicts = [s.verdict for s in samples]
    verdict = aggregate(verdicts)
    worst_sample = max(samples, key=lambda s: s.violation)
    curvatures = [abs(s.curvature) for s in samples if s.curvature is not None]
    reasons = sorted({s.reason for s in samples if s.reason})
    details.update({
        'verdicts': verdict_counts(verdicts),
        'max_flat_curvature': max(curvatures) if curvatures else None,
        'inconclusive_reasons': reasons,
    })
    report = CheckReport(
        check=CHECK_NAME,
        verdict=verdict,
        worst_violation=max(worst_sample.violation, 0.0),
        witness=worst_sample.witness if verdict is Verdict.FAIL else None,
        details=details,
    )
    if report.failed:
        log_check_failure(logger, CHECK_NAME, verdict.value, report.worst_violation,
                          report.witness)
    return report
