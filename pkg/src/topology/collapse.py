"""
Collapse sequences: repeated elementary collapses under a tie-breaking strategy.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Union

from ..core.exceptions import ConfigurationError
from ..core.utils.enums import CollapseStrategy
from .complex import FreeFacePair, SimplicialComplex, elementary_collapse, free_faces, is_free

logger = logging.getLogger("cat0.topology")


@dataclass
class CollapseTrace:
    """Ordered elementary collapses from an initial complex.

    `verification_reports[i]` holds the check reports attached to step i
    (empty when nothing was verified).
    """

    initial: SimplicialComplex
    steps: List[FreeFacePair] = field(default_factory=list)
    verification_reports: List[List[Any]] = field(default_factory=list)

    def append(self, pair: FreeFacePair, reports: Optional[List[Any]] = None) -> None:
        self.steps.append(pair)
        self.verification_reports.append(list(reports or []))

    def replay(self) -> Iterator[SimplicialComplex]:
        """Yield the complex after every prefix, starting with the empty prefix.

        Raises:
            PreconditionError: if a recorded step is not free in its prefix
        """
        current = self.initial
        yield current
        for pair in self.steps:
            current = elementary_collapse(current, pair)
            yield current

    @property
    def final(self) -> SimplicialComplex:
        current = self.initial
        for current in self.replay():
            pass
        return current

    def to_dict(self) -> Dict[str, Any]:
        return {
            'step_count': len(self.steps),
            'steps': [
                {**pair.to_dict(), 'reports': [r.to_dict() for r in reports]}
                for pair, reports in zip(self.steps, self.verification_reports)
            ],
        }


@dataclass
class NoFreeFace:
    """A collapse sequence that got stuck before reaching a single vertex."""

    step: int
    stuck: SimplicialComplex
    trace: CollapseTrace

    def to_dict(self) -> Dict[str, Any]:
        return {
            'step': self.step,
            'stuck_maximal_simplices': [s.to_list() for s in self.stuck.maximal_simplices()],
            'stuck_f_vector': self.stuck.f_vector,
        }


def choose_pair(K: SimplicialComplex, strategy: CollapseStrategy) -> Optional[FreeFacePair]:
    """
    Pick the next free pair, or None when the complex has no free face.

    greedy_lex takes the lexicographically first pair; prefer_3_simplices
    takes the first pair among those whose coface has the highest dimension.
    """
    pairs = free_faces(K)
    if not pairs:
        return None
    if strategy is CollapseStrategy.GREEDY_LEX:
        return pairs[0]
    if strategy is CollapseStrategy.PREFER_3_SIMPLICES:
        top = max(p.coface.dimension for p in pairs)
        return next(p for p in pairs if p.coface.dimension == top)
    raise ConfigurationError(f"Unknown collapse strategy {strategy!r}",
                             config_key='engine.strategy')


def collapse_sequence(
    K: SimplicialComplex,
    strategy: Union[CollapseStrategy, str] = CollapseStrategy.PREFER_3_SIMPLICES,
) -> Union[CollapseTrace, NoFreeFace]:
    """
    Collapse until a single vertex remains or no free face exists.

    Args:
        K: Starting complex
        strategy: Tie-breaking strategy

    Returns:
        The trace on success, otherwise a NoFreeFace report naming the stuck complex
    """
    strategy = CollapseStrategy(strategy)
    trace = CollapseTrace(initial=K)
    current = K
    while not current.is_single_vertex():
        pair = choose_pair(current, strategy)
        if pair is None:
            logger.info(f"No free face after {len(trace.steps)} steps; stuck at {current!r}")
            return NoFreeFace(step=len(trace.steps), stuck=current, trace=trace)
        assert is_free(current, pair)
        current = elementary_collapse(current, pair)
        trace.append(pair)
    logger.debug(f"Collapsed {K!r} to a point in {len(trace.steps)} steps")
    return trace
