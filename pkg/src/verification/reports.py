"""
Check reports and the neighborhoods that sampled checks run on.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional

from ..core.exceptions import PreconditionError
from ..core.utils.enums import Verdict
from ..geometry import MetricAssignment
from ..topology import FreeFacePair, SimplexId, SimplicialComplex, is_free


@dataclass
class CheckReport:
    """Outcome of one verification check.

    A failing report always carries a witness. For quantitative checks the
    verdict is pass exactly when `worst_violation` is within tolerance.
    """

    check: str
    verdict: Verdict
    worst_violation: float = 0.0
    witness: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is Verdict.FAIL and self.witness is None:
            raise PreconditionError(f"Failing {self.check} report needs a witness",
                                    operation='check_report', subject=self.check)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.FAIL

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            'check': self.check,
            'verdict': self.verdict.value,
            'worst_violation': float(self.worst_violation),
        }
        if self.witness is not None:
            result['witness'] = self.witness
        result['details'] = self.details
        return result


def combine_reports(check: str, reports: List[CheckReport]) -> CheckReport:
    """Merge reports of one check run on several neighborhoods."""
    verdict = Verdict.worst(*(r.verdict for r in reports)) if reports else Verdict.PASS
    witness = next((r.witness for r in reports if r.failed), None)
    return CheckReport(
        check=check,
        verdict=verdict,
        worst_violation=max((r.worst_violation for r in reports), default=0.0),
        witness=witness,
        details={'parts': [r.to_dict() for r in reports]},
    )


@dataclass(frozen=True)
class NeighborhoodSpec:
    """
    The ball of radius r about a vertex a, optionally after removing a free pair.

    Samples are drawn from the closed star of a in the current complex
    (K' = K - {σ, α} when a pair was removed), restricted to d(a, x) <= r and
    kept out of the closed σ.
    """

    K: SimplicialComplex
    metric: MetricAssignment
    center: str
    radius: float
    removed: Optional[FreeFacePair] = None

    def __post_init__(self):
        if not self.radius > 0:
            raise PreconditionError("Neighborhood radius must be positive",
                                    operation='neighborhood', subject=self.radius)
        if SimplexId.of(self.center) not in self.K:
            raise PreconditionError(f"{self.center!r} is not a vertex of the complex",
                                    operation='neighborhood', subject=self.center)
        if self.removed is not None:
            if self.center not in self.removed.coface.vertices:
                raise PreconditionError("The center must be a vertex of the removed coface",
                                        operation='neighborhood', subject=self.removed.to_dict())
            if not is_free(self.K, self.removed):
                raise PreconditionError(f"{self.removed} is not a free pair",
                                        operation='neighborhood', subject=self.removed.to_dict())

    @classmethod
    def for_collapse(cls, K: SimplicialComplex, metric: MetricAssignment,
                     pair: FreeFacePair) -> 'NeighborhoodSpec':
        """U' about the vertex of σ opposite α, with r the longest edge of σ."""
        (apex,) = [v for v in pair.coface.vertices if v not in pair.free_face.vertices]
        radius = metric.diameter(pair.coface)
        return cls(K=K, metric=metric, center=apex, radius=radius, removed=pair)

    @classmethod
    def around(cls, K: SimplicialComplex, metric: MetricAssignment, center: str,
               radius: Optional[float] = None) -> 'NeighborhoodSpec':
        """Ball about a vertex; the radius defaults to the longest edge at the vertex."""
        if radius is None:
            star_edges = [e for e in K.star(SimplexId.of(center)) if e.dimension == 1]
            radius = max((metric.length(*e.vertices) for e in star_edges), default=1.0)
        return cls(K=K, metric=metric, center=center, radius=radius)

    @property
    def sigma(self) -> Optional[SimplexId]:
        return self.removed.coface if self.removed is not None else None

    @cached_property
    def current(self) -> SimplicialComplex:
        """The complex the neighborhood lives in."""
        if self.removed is None:
            return self.K
        return self.K.without(self.removed.coface, self.removed.free_face)

    @cached_property
    def star(self) -> SimplicialComplex:
        return self.current.closed_star(SimplexId.of(self.center))

    @cached_property
    def domain(self) -> List[SimplexId]:
        """Maximal simplices of the star that samples are drawn from."""
        sigma = self.sigma
        return [m for m in self.star.maximal_simplices()
                if sigma is None or not m.is_face_of(sigma)]

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    def to_dict(self) -> Dict[str, Any]:
        return {
            'center': self.center,
            'radius': self.radius,
            'removed': self.removed.to_dict() if self.removed is not None else None,
        }
