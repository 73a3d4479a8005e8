"""
Midpoints of σ-avoiding paths whose geodesic legs also avoid σ.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Union

from ..core.config import get_config
from ..core.exceptions import GeodesicError, PreconditionError
from ..topology import SimplexId
from .points import PiecewisePath, SimplexPoint, segment_hits_interior
from .solver import GeodesicSolver

logger = logging.getLogger("cat0.geodesics")


@dataclass(frozen=True)
class ResolutionExhausted:
    """No scanned path point had both legs clear of σ."""

    scan: int
    candidates_tested: int

    def to_dict(self) -> Dict[str, Any]:
        return {'scan': self.scan, 'candidates_tested': self.candidates_tested}


def path_avoids(path: PiecewisePath, sigma: SimplexId) -> bool:
    return not any(segment_hits_interior(a, b, sigma) for a, b in path.segments())


def safe_midpoint(
    solver: GeodesicSolver,
    path: PiecewisePath,
    sigma: SimplexId,
    scan: Optional[int] = None,
) -> Union[SimplexPoint, ResolutionExhausted]:
    """
    A point m on a σ-avoiding path from p to q whose geodesics [p, m] and
    [m, q] both avoid the interior of σ.

    Candidates are the path points at fractions i/scan, tried from the middle
    outwards. The solver must work in a complex that still contains σ.

    Returns:
        The first qualifying point, or ResolutionExhausted

    Raises:
        PreconditionError: if the path meets σ's interior or an endpoint lies in closed σ
    """
    scan = scan if scan is not None else get_config().midpoint_scan
    p, q = path.start, path.end
    if not path_avoids(path, sigma):
        raise PreconditionError("Path crosses the interior of σ", operation='safe_midpoint',
                                subject=sigma.to_list())
    if p.in_closed(sigma) or q.in_closed(sigma):
        raise PreconditionError("Path endpoints must lie outside σ", operation='safe_midpoint',
                                subject=sigma.to_list())

    order = sorted(range(1, scan), key=lambda i: (abs(2 * i - scan), i))
    tested = 0
    for i in order:
        m = path.point_at(solver.metric, i / scan)
        tested += 1
        try:
            first = solver.geodesic(p, m)
            second = solver.geodesic(m, q)
        except GeodesicError as exc:
            logger.debug(f"Skipping candidate {m}: {exc}")
            continue
        if path_avoids(first, sigma) and path_avoids(second, sigma):
            return m
    logger.info(f"No safe midpoint among {tested} candidates at scan {scan}")
    return ResolutionExhausted(scan=scan, candidates_tested=tested)
