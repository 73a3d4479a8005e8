"""
The CAT(0) 4-point condition: planar subembeddings of 4-tuples.

A 4-tuple (x1, y1, x2, y2) has a subembedding when four planar points match
the four cross distances d(xi, yj) exactly and do not shrink the diagonals
d(x1, x2) and d(y1, y2).
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..core.config import Tolerances
from ..core.exceptions import MalformedInputError

logger = logging.getLogger("cat0.geometry")

_DEFAULT_TOL = Tolerances()
_SCAN_POINTS = 65


@dataclass(frozen=True)
class FourTuple:
    """Six pairwise distances among x1, y1, x2, y2."""

    x1y1: float
    x1y2: float
    x2y1: float
    x2y2: float
    x1x2: float
    y1y2: float

    def __post_init__(self):
        for name, value in self.to_dict().items():
            if not np.isfinite(value) or value < 0:
                raise MalformedInputError(f"Distance {name} must be finite and non-negative",
                                          field=name)

    @classmethod
    def from_points(cls, x1, y1, x2, y2) -> 'FourTuple':
        """Distances among four Euclidean points."""
        x1, y1, x2, y2 = (np.asarray(p, dtype=float) for p in (x1, y1, x2, y2))

        def dist(u, v):
            return float(np.linalg.norm(u - v))

        return cls(dist(x1, y1), dist(x1, y2), dist(x2, y1), dist(x2, y2),
                   dist(x1, x2), dist(y1, y2))

    def to_dict(self) -> Dict[str, float]:
        return {'x1y1': self.x1y1, 'x1y2': self.x1y2, 'x2y1': self.x2y1,
                'x2y2': self.x2y2, 'x1x2': self.x1x2, 'y1y2': self.y1y2}


@dataclass(frozen=True)
class SubembeddingResult:
    exists: bool
    witness: Optional[Dict[str, Tuple[float, float]]] = None
    diagonal_x: float = 0.0
    diagonal_y: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {'exists': self.exists}
        if self.witness is not None:
            result['witness'] = {k: list(v) for k, v in self.witness.items()}
            result['diagonal_x'] = self.diagonal_x
            result['diagonal_y'] = self.diagonal_y
        return result


def _apexes(base: float, r1: float, r2: float) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """Both points at distance r1 from (0,0) and r2 from (base,0); None if the circles miss."""
    if base <= 0:
        if abs(r1 - r2) > 0:
            return None
        point = np.array([r1, 0.0])
        return point, point
    x = (r1 * r1 + base * base - r2 * r2) / (2.0 * base)
    h2 = r1 * r1 - x * x
    if h2 < -1e-12 * max(r1 * r1, 1.0):
        return None
    h = float(np.sqrt(max(h2, 0.0)))
    return np.array([x, h]), np.array([x, -h])


def _best_configuration(t: FourTuple, base: float):
    """Widest ȳ1ȳ2 over the four reflection choices with |x̄1x̄2| = base."""
    first = _apexes(base, t.x1y1, t.x2y1)
    second = _apexes(base, t.x1y2, t.x2y2)
    if first is None or second is None:
        return None
    best = None
    for y1, y2 in product(first, second):
        gap = float(np.linalg.norm(y1 - y2))
        if best is None or gap > best[0]:
            best = (gap, y1, y2)
    return best


def subembedding_check(t: FourTuple, tol: float = _DEFAULT_TOL.planar) -> SubembeddingResult:
    """
    Decide whether a 4-tuple admits a planar subembedding.

    x̄1 is fixed at the origin and x̄2 on the positive axis at distance L.
    For each admissible L the points ȳ1, ȳ2 are forced up to reflection in
    the axis, so the four reflection choices are enumerated. L ranges over
    [max(d(x1,x2), Lmin), Lmax], where the circle constraints are solvable.
    The widest ȳ1ȳ2 is searched first at the left end, then on a scan of the
    interval refined by a bounded scalar search.

    Args:
        t: Distance table
        tol: Relative slack for equality decisions

    Returns:
        exists=False (not an error) when the cross distances cannot be
        realized with the diagonal constraints
    """
    scale = max(t.to_dict().values()) or 1.0
    slack = tol * scale
    lower = max(abs(t.x1y1 - t.x2y1), abs(t.x1y2 - t.x2y2))
    upper = min(t.x1y1 + t.x2y1, t.x1y2 + t.x2y2)
    start = max(t.x1x2, lower)
    if start > upper + slack:
        return SubembeddingResult(exists=False)
    start = min(start, upper)

    def gap(base: float) -> float:
        found = _best_configuration(t, base)
        return -1.0 if found is None else found[0]

    candidates = [start] + list(np.linspace(start, upper, _SCAN_POINTS)[1:])
    values = [gap(b) for b in candidates]
    best_index = int(np.argmax(values))
    best_base, best_gap = candidates[best_index], values[best_index]
    if best_gap < t.y1y2 - slack and upper > start:
        lo = candidates[max(best_index - 1, 0)]
        hi = candidates[min(best_index + 1, len(candidates) - 1)]
        refined = minimize_scalar(lambda b: -gap(b), bounds=(lo, hi), method='bounded',
                                  options={'xatol': 1e-13 * scale})
        if -refined.fun > best_gap:
            best_base, best_gap = float(refined.x), float(-refined.fun)

    if best_gap < t.y1y2 - slack:
        return SubembeddingResult(exists=False)
    _, y1, y2 = _best_configuration(t, best_base)
    witness = {
        'x1': (0.0, 0.0),
        'y1': (float(y1[0]), float(y1[1])),
        'x2': (float(best_base), 0.0),
        'y2': (float(y2[0]), float(y2[1])),
    }
    return SubembeddingResult(exists=True, witness=witness,
                              diagonal_x=float(best_base), diagonal_y=best_gap)
