"""
Euclidean realization of metric simplices from their edge lengths.

Canonical placement: vertex 0 at the origin, vertex 1 on the positive first
axis, vertex 2 in the upper half-plane of the first two axes, vertex 3 on the
positive side of the third axis. Coordinates come from the Cholesky factor of
the Gram matrix of the edge vectors issuing from vertex 0.
"""

from math import factorial
from typing import Optional, Sequence

import numpy as np

from ..core.config import Tolerances
from ..core.exceptions import DegenerateSimplexError, InvalidMetricError

_DEFAULT_TOL = Tolerances()


def cayley_menger_determinant(squared: np.ndarray) -> float:
    """
    Determinant of the bordered matrix of squared distances.

    Args:
        squared: (n+1, n+1) symmetric matrix of squared edge lengths

    Returns:
        det [[0, 1ᵀ], [1, D]]; equals 288·V² for a tetrahedron and −16·A² for a triangle
    """
    squared = np.asarray(squared, dtype=float)
    size = squared.shape[0]
    bordered = np.ones((size + 1, size + 1))
    bordered[0, 0] = 0.0
    bordered[1:, 1:] = squared
    return float(np.linalg.det(bordered))


def simplex_volume_squared(squared: np.ndarray) -> float:
    """Squared n-volume from the Cayley–Menger determinant (negative when unrealizable)."""
    n = np.asarray(squared).shape[0] - 1
    if n == 0:
        return 0.0
    sign = (-1) ** (n + 1)
    return sign * cayley_menger_determinant(squared) / (2 ** n * factorial(n) ** 2)


def gram_matrix(squared: np.ndarray) -> np.ndarray:
    """Gram matrix of the vectors v_i - v_0 (i >= 1)."""
    squared = np.asarray(squared, dtype=float)
    d0 = squared[0, 1:]
    return 0.5 * (d0[:, None] + d0[None, :] - squared[1:, 1:])


def realize_squared(squared: np.ndarray, tol: float = _DEFAULT_TOL.spatial,
                    simplex: Optional[Sequence[str]] = None) -> np.ndarray:
    """
    Realize a simplex of any dimension 0-3 from its squared edge lengths.

    Args:
        squared: (k+1, k+1) squared distance matrix
        tol: Relative tolerance on det(Gram) below which the simplex counts as flat
        simplex: Vertex labels, only used in error details

    Returns:
        (k+1, k) coordinates in canonical placement

    Raises:
        InvalidMetricError: if the lengths are not realizable or realize a flat simplex
    """
    squared = np.asarray(squared, dtype=float)
    k = squared.shape[0] - 1
    coords = np.zeros((k + 1, k))
    if k == 0:
        return coords
    gram = gram_matrix(squared)
    scale = float(np.max(squared))
    det = float(np.linalg.det(gram))
    label = list(simplex) if simplex is not None else None
    if scale <= 0 or det <= tol * scale ** k:
        raise InvalidMetricError(
            f"Edge lengths of {k}-simplex are not realizable as a non-degenerate Euclidean simplex",
            simplex=label,
            determinant=cayley_menger_determinant(squared),
        )
    try:
        factor = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise InvalidMetricError(
            f"Edge lengths of {k}-simplex are not realizable in Euclidean space",
            simplex=label,
            determinant=cayley_menger_determinant(squared),
        ) from exc
    coords[1:] = factor
    return coords


def realize_triangle(l12: float, l23: float, l31: float,
                     tol: float = _DEFAULT_TOL.planar) -> np.ndarray:
    """
    Planar triangle with the given side lengths.

    Args:
        l12, l23, l31: Side lengths between vertices 1-2, 2-3 and 3-1

    Returns:
        (3, 2) array: (0, 0), (l12, 0), and vertex 3 in the upper half-plane

    Raises:
        InvalidMetricError: if a triangle inequality fails
        DegenerateSimplexError: if the triangle is flat within tolerance
    """
    lengths = sorted((l12, l23, l31))
    if lengths[0] <= 0:
        raise DegenerateSimplexError("Triangle has a non-positive side", lengths=[l12, l23, l31])
    excess = lengths[0] + lengths[1] - lengths[2]
    if excess < -tol * lengths[2]:
        raise InvalidMetricError("Triangle inequality violated", lengths=[l12, l23, l31])
    if excess <= tol * lengths[2]:
        raise DegenerateSimplexError("Triangle is degenerate", lengths=[l12, l23, l31])
    x = (l12 * l12 + l31 * l31 - l23 * l23) / (2.0 * l12)
    y = np.sqrt(max(l31 * l31 - x * x, 0.0))
    return np.array([[0.0, 0.0], [l12, 0.0], [x, y]])


def realize_tetrahedron(lengths: Sequence[float], tol: float = _DEFAULT_TOL.spatial) -> np.ndarray:
    """
    Tetrahedron in 3-space from six edge lengths.

    Args:
        lengths: (l01, l02, l03, l12, l13, l23)

    Returns:
        (4, 3) coordinates in canonical placement

    Raises:
        InvalidMetricError: carrying the Cayley–Menger determinant when not realizable
    """
    l01, l02, l03, l12, l13, l23 = (float(v) for v in lengths)
    if min(l01, l02, l03, l12, l13, l23) <= 0:
        raise InvalidMetricError("Tetrahedron has a non-positive edge", lengths=list(lengths))
    squared = np.array([
        [0.0, l01 ** 2, l02 ** 2, l03 ** 2],
        [l01 ** 2, 0.0, l12 ** 2, l13 ** 2],
        [l02 ** 2, l12 ** 2, 0.0, l23 ** 2],
        [l03 ** 2, l13 ** 2, l23 ** 2, 0.0],
    ])
    return realize_squared(squared, tol)


def tetrahedron_volume(coords: np.ndarray) -> float:
    """Unsigned volume of a realized tetrahedron."""
    edges = np.asarray(coords[1:]) - np.asarray(coords[0])
    return abs(float(np.linalg.det(edges))) / 6.0
