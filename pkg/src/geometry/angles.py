"""
Alexandrov angle estimation between two geodesics with a common origin.

The angle is a lim-sup of comparison angles, which is not computable
exactly. It is estimated on the geometric grid s, t ∈ {t0·2^-k}: the value is
the largest comparison angle over the tail k ≥ K/2 of the grid, and the
spread over that tail is reported as the uncertainty.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, TypeVar

import numpy as np

from ..core.exceptions import DomainError
from .comparison import comparison_angle

P = TypeVar('P')


@dataclass(frozen=True)
class AngleEstimate:
    value: float
    uncertainty: float
    samples_used: int

    def __post_init__(self):
        if not 0.0 <= self.value <= np.pi + 1e-12:
            raise DomainError(f"Angle {self.value} outside [0, π]", parameter=self.value)
        if self.uncertainty < 0:
            raise DomainError("Negative angle uncertainty", parameter=self.uncertainty)

    def to_dict(self) -> Dict[str, Any]:
        return {'value': self.value, 'uncertainty': self.uncertainty,
                'samples_used': self.samples_used}


def _euclidean(x, y) -> float:
    return float(np.linalg.norm(np.asarray(x, dtype=float) - np.asarray(y, dtype=float)))


def _evaluate(curve: Callable[[float], P], parameter: float) -> P:
    try:
        point = curve(parameter)
    except DomainError:
        raise
    except (ValueError, IndexError) as exc:
        raise DomainError(f"Geodesic undefined at parameter {parameter}",
                          parameter=parameter) from exc
    if point is None:
        raise DomainError(f"Geodesic undefined at parameter {parameter}", parameter=parameter)
    return point


def alexandrov_angle_estimate(
    c: Callable[[float], P],
    c_prime: Callable[[float], P],
    t0: float,
    halvings: int,
    distance: Optional[Callable[[P, P], float]] = None,
) -> AngleEstimate:
    """
    Estimate the Alexandrov angle between two unit-speed geodesics.

    Args:
        c, c_prime: Evaluators issuing from a common point, defined on (0, t0]
        t0: Largest parameter used
        halvings: Grid depth K; the tail is k = ceil(K/2)..K
        distance: Metric between evaluator outputs; Euclidean by default

    Returns:
        AngleEstimate with the tail maximum and the tail spread

    Raises:
        DomainError: if t0 <= 0 or an evaluator is undefined on the grid
    """
    if t0 <= 0 or not np.isfinite(t0):
        raise DomainError("Initial parameter must be positive", parameter=t0)
    if halvings < 0:
        raise DomainError("Number of halvings must be non-negative", parameter=halvings)
    distance = distance or _euclidean

    tail = range(int(np.ceil(halvings / 2)), halvings + 1)
    params = [t0 * 2.0 ** -k for k in tail]
    first = [_evaluate(c, s) for s in params]
    second = [_evaluate(c_prime, t) for t in params]

    angles = []
    for s, x in zip(params, first):
        for t, y in zip(params, second):
            gap = float(distance(x, y))
            gap = min(max(gap, abs(s - t)), s + t)
            angles.append(comparison_angle(gap, s, t))
    values = np.asarray(angles)
    return AngleEstimate(
        value=float(values.max()),
        uncertainty=float(values.max() - values.min()),
        samples_used=len(angles),
    )
