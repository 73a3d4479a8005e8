"""
Collapse engine: tetrahedra first, verifying every collapse, then the
2-dimensional spine down to a point.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from ..core.config import Config, Tolerances, get_config
from ..core.exceptions import ConfigurationError
from ..core.utils import step_seed
from ..core.utils.enums import CollapseStrategy, EngineOutcome, Verdict
from ..geometry import MetricAssignment
from ..topology import (
    CollapseTrace,
    FreeFacePair,
    NoFreeFace,
    SimplicialComplex,
    choose_pair,
    elementary_collapse,
    free_faces,
)
from ..verification import (
    CheckReport,
    NeighborhoodSpec,
    cat0_triangle_sample_check,
    property_a_check,
)

logger = logging.getLogger("cat0.engine")

DEPARTURE_NOTE = (
    "Collapses are purely simplicial: no continuous retraction is interleaved with "
    "them and no center point is tracked or re-chosen when its simplex is removed."
)


@dataclass(frozen=True)
class EngineConfig:
    """Settings of one engine run."""

    verify_each_step: bool = True
    n_samples: int = 1000
    seed: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)
    strategy: CollapseStrategy = CollapseStrategy.PREFER_3_SIMPLICES
    verify_spine: bool = False
    comparison_grid: int = 3
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'strategy', CollapseStrategy(self.strategy))
        if self.verify_each_step and self.n_samples <= 0:
            raise ConfigurationError("Verification needs a positive sample count",
                                     config_key='sampling.samples')

    @classmethod
    def from_config(cls, config: Optional[Config] = None, **overrides) -> 'EngineConfig':
        """Engine settings from the active profile, with keyword overrides."""
        config = config or get_config()
        values: Dict[str, Any] = {
            'verify_each_step': config.verify_each_step,
            'n_samples': config.samples,
            'seed': config.seed,
            'tolerances': Tolerances.from_config(config),
            'strategy': config.strategy,
            'verify_spine': config.verify_spine,
            'comparison_grid': config.comparison_grid,
            'workers': config.workers,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'verify_each_step': self.verify_each_step,
            'n_samples': self.n_samples,
            'seed': self.seed,
            'tolerances': asdict(self.tolerances),
            'strategy': self.strategy.value,
            'verify_spine': self.verify_spine,
            'comparison_grid': self.comparison_grid,
        }


@dataclass
class VerifiedTrace:
    """A collapse trace with the reports of every step and how the run ended.

    A failed run stops at the failing step, which is included in the trace.
    """

    trace: CollapseTrace
    outcome: EngineOutcome
    metadata: Dict[str, Any] = field(default_factory=dict)
    stuck: Optional[NoFreeFace] = None
    failed_step: Optional[int] = None

    @property
    def reports(self) -> List[List[CheckReport]]:
        return self.trace.verification_reports

    @property
    def final(self) -> SimplicialComplex:
        return self.trace.final

    @property
    def failure(self) -> Optional[CheckReport]:
        if self.failed_step is None:
            return None
        return next(r for r in self.reports[self.failed_step] if r.failed)

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            'outcome': self.outcome.value,
            'metadata': self.metadata,
            **self.trace.to_dict(),
            'final_f_vector': self.final.f_vector,
        }
        if self.stuck is not None:
            result['stuck'] = self.stuck.to_dict()
        if self.failed_step is not None:
            result['failed_step'] = self.failed_step
            result['witness'] = self.failure.witness
        return result


def _next_pair(K: SimplicialComplex, strategy: CollapseStrategy) -> Optional[FreeFacePair]:
    """Under prefer_3_simplices no lower pair is taken while a tetrahedron remains."""
    pair = choose_pair(K, strategy)
    if pair is None:
        return None
    if strategy is CollapseStrategy.PREFER_3_SIMPLICES and K.dimension == 3 \
            and pair.coface.dimension != 3:
        logger.warning(f"Tetrahedra remain in {K!r} but none has a free face")
        return None
    return pair


def _verify_step(K: SimplicialComplex, metric: MetricAssignment, pair: FreeFacePair,
                 step: int, config: EngineConfig) -> List[CheckReport]:
    seed = step_seed(config.seed, step)
    reports = []
    if pair.coface.dimension == 3:
        reports.append(property_a_check(K, metric, pair.coface, pair.free_face,
                                        n_samples=config.n_samples, seed=seed,
                                        tolerances=config.tolerances, workers=config.workers))
    elif not config.verify_spine:
        return reports
    spec = NeighborhoodSpec.for_collapse(K, metric, pair)
    reports.append(cat0_triangle_sample_check(spec, n_samples=config.n_samples, seed=seed,
                                              tolerances=config.tolerances,
                                              comparison_grid=config.comparison_grid,
                                              workers=config.workers))
    return reports


def run(K: SimplicialComplex, metric: MetricAssignment,
        config: Optional[EngineConfig] = None) -> VerifiedTrace:
    """
    Collapse K to a point, verifying the neighborhood of every tetrahedron collapse.

    Before a tetrahedron is collapsed Property A is checked for it; after the
    collapse the CAT(0) inequality is sampled in U', the ball about the
    vertex opposite the free face. Inconclusive reports do not stop the run.
    Once no tetrahedra remain the spine is collapsed combinatorially, unless
    `verify_spine` asks for the triangle sampler there too.

    Returns:
        VerifiedTrace with outcome collapsed_to_point, stuck_no_free_face
        (stuck complex attached) or verification_failed (failing step included)

    Raises:
        InvalidMetricError: if the metric is not valid for K
    """
    config = config or EngineConfig.from_config()
    metric.validate(K, config.tolerances)
    metadata = {**config.to_dict(), 'note': DEPARTURE_NOTE}
    trace = CollapseTrace(initial=K)
    current = K
    while not current.is_single_vertex():
        step = len(trace.steps)
        pair = _next_pair(current, config.strategy)
        if pair is None:
            stuck = NoFreeFace(step=step, stuck=current, trace=trace)
            logger.info(f"Stuck at step {step} on {current!r}")
            return VerifiedTrace(trace, EngineOutcome.STUCK_NO_FREE_FACE, metadata, stuck=stuck)
        reports = _verify_step(current, metric, pair, step, config) \
            if config.verify_each_step else []
        current = elementary_collapse(current, pair)
        trace.append(pair, reports)
        if any(r.verdict is Verdict.FAIL for r in reports):
            logger.warning(f"Verification failed at step {step} collapsing {pair}")
            return VerifiedTrace(trace, EngineOutcome.VERIFICATION_FAILED, metadata,
                                 failed_step=step)
        logger.debug(f"Step {step}: collapsed {pair}")
    logger.info(f"Collapsed to a point in {len(trace.steps)} steps")
    return VerifiedTrace(trace, EngineOutcome.COLLAPSED_TO_POINT, metadata)


def spine(K: SimplicialComplex) -> SimplicialComplex:
    """
    The complex left once no tetrahedron has a free face.

    Tetrahedron pairs are taken lexicographically, as prefer_3_simplices takes
    them. Idempotent; free of tetrahedra whenever the tetrahedra collapse away.
    """
    current = K
    while True:
        pairs = [p for p in free_faces(current) if p.coface.dimension == 3]
        if not pairs:
            return current
        current = elementary_collapse(current, pairs[0])
