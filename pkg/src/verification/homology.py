"""
Mod-2 Betti numbers from boundary matrix ranks.
"""

import logging
from typing import List

import numpy as np

from ..core.logging import log_check_failure
from ..core.utils.enums import Verdict
from ..topology import SimplicialComplex
from .reports import CheckReport

logger = logging.getLogger("cat0.verification")

CHECK_NAME = 'homology'
CONTRACTIBLE_BETTI = (1, 0, 0, 0)


def boundary_matrix(K: SimplicialComplex, dimension: int) -> np.ndarray:
    """∂_dimension over GF(2): rows are (dimension-1)-faces, columns dimension-faces."""
    rows = K.simplices_of_dim(dimension - 1) if dimension > 0 else []
    cols = K.simplices_of_dim(dimension) if dimension <= K.dimension else []
    index = {s: i for i, s in enumerate(rows)}
    matrix = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    for j, simplex in enumerate(cols):
        for facet in simplex.facets():
            matrix[index[facet], j] = 1
    return matrix


def gf2_rank(matrix: np.ndarray) -> int:
    """Rank over GF(2) by column reduction with xor."""
    work = (np.asarray(matrix, dtype=np.uint8) & 1).copy()
    rank = 0
    n_rows, n_cols = work.shape
    for col in range(n_cols):
        pivots = np.nonzero(work[rank:, col])[0]
        if not len(pivots):
            continue
        pivot = rank + int(pivots[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        below = np.nonzero(work[:, col])[0]
        below = below[below != rank]
        work[below] ^= work[rank]
        rank += 1
        if rank == n_rows:
            break
    return rank


def betti_numbers(K: SimplicialComplex, top: int = 3) -> List[int]:
    """b_0 .. b_top over GF(2)."""
    ranks = [gf2_rank(boundary_matrix(K, d)) if 0 < d <= K.dimension else 0
             for d in range(top + 2)]
    counts = [len(K.simplices_of_dim(d)) if d <= K.dimension else 0 for d in range(top + 1)]
    return [counts[d] - ranks[d] - ranks[d + 1] for d in range(top + 1)]


def homology_necessary_check(K: SimplicialComplex) -> CheckReport:
    """
    Contractible complexes have the homology of a point: b = (1, 0, 0, 0).

    Passing is necessary but not sufficient; the dunce hat passes without
    being collapsible.
    """
    betti = betti_numbers(K)
    violation = float(sum(abs(b - e) for b, e in zip(betti, CONTRACTIBLE_BETTI)))
    verdict = Verdict.PASS if violation == 0 else Verdict.FAIL
    witness = {'betti': betti, 'expected': list(CONTRACTIBLE_BETTI)} if violation else None
    report = CheckReport(check=CHECK_NAME, verdict=verdict, worst_violation=violation,
                         witness=witness, details={'betti': betti, 'f_vector': K.f_vector})
    if report.failed:
        log_check_failure(logger, CHECK_NAME, verdict.value, violation, witness)
    return report
