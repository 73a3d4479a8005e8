"""
Sampled CAT(0) 4-point condition.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..core.config import Tolerances, get_config
from ..core.exceptions import Cat0Error, PreconditionError
from ..core.logging import log_check_failure
from ..core.utils import derive_rng, ordered_map
from ..core.utils.enums import Verdict
from ..geodesics import GeodesicSolver
from ..geometry import FourTuple, subembedding_check
from .reports import CheckReport, NeighborhoodSpec
from .sampling import InconclusiveSample, aggregate, sample_point, verdict_counts

logger = logging.getLogger("cat0.verification")

CHECK_NAME = 'four_point'

# (x1, x2 | y1, y2): the three ways to split four points into two diagonals
_PAIRINGS: Tuple[Tuple[int, int, int, int], ...] = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))


@dataclass(frozen=True)
class FourPointSample:
    index: int
    verdict: Verdict
    witness: Optional[Dict[str, Any]] = None
    reason: Optional[str] = None


def four_point_sample_check(
    spec: NeighborhoodSpec,
    n_samples: Optional[int] = None,
    seed: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
    workers: Optional[int] = None,
    max_attempts: Optional[int] = None,
) -> CheckReport:
    """
    Sample 4-tuples of neighborhood points and ask for planar subembeddings.

    Each tuple is tested under all three splits into diagonals. The worst
    violation is the fraction of decided tuples without a subembedding, so
    the check passes exactly when it is zero.
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
    if not spec.domain:
        return CheckReport(check=CHECK_NAME, verdict=Verdict.PASS,
                           details={'vacuous': True, 'neighborhood': spec.to_dict()})

    solver = GeodesicSolver(spec.star, spec.metric, tolerances=tolerances)

    def evaluate(index: int) -> FourPointSample:
        rng = derive_rng(seed, index)
        try:
            points = [sample_point(spec, rng, max_attempts) for _ in range(4)]
            table = {(i, j): solver.distance(points[i], points[j])
                     for i in range(4) for j in range(i + 1, 4)}
        except InconclusiveSample as exc:
            return FourPointSample(index, Verdict.INCONCLUSIVE, reason=exc.reason)
        except Cat0Error as exc:
            return FourPointSample(index, Verdict.INCONCLUSIVE, reason=exc.error_code)

        def d(i: int, j: int) -> float:
            return table[(min(i, j), max(i, j))]

        for x1, x2, y1, y2 in _PAIRINGS:
            t = FourTuple(x1y1=d(x1, y1), x1y2=d(x1, y2), x2y1=d(x2, y1), x2y2=d(x2, y2),
                          x1x2=d(x1, x2), y1y2=d(y1, y2))
            if not subembedding_check(t, tolerances.check).exists:
                witness = {
                    'x1': points[x1].to_dict(), 'y1': points[y1].to_dict(),
                    'x2': points[x2].to_dict(), 'y2': points[y2].to_dict(),
                    'distances': t.to_dict(),
                }
                return FourPointSample(index, Verdict.FAIL, witness=witness)
        return FourPointSample(index, Verdict.PASS)

    samples: List[FourPointSample] = ordered_map(evaluate, list(range(n_samples)), workers)
    verdicts = [s.verdict for s in samples]
    verdict = aggregate(verdicts)
    failures = [s for s in samples if s.verdict is Verdict.FAIL]
    decided = sum(1 for v in verdicts if v is not Verdict.INCONCLUSIVE)
    violation = len(failures) / decided if decided else 0.0
    report = CheckReport(
        check=CHECK_NAME,
        verdict=verdict,
        worst_violation=violation,
        witness=failures[0].witness if failures else None,
        details={
            'neighborhood': spec.to_dict(),
            'samples': n_samples,
            'seed': seed,
            'verdicts': verdict_counts(verdicts),
            'inconclusive_reasons': sorted({s.reason for s in samples if s.reason}),
        },
    )
    if report.failed:
        log_check_failure(logger, CHECK_NAME, verdict.value, violation, report.witness)
    return report
