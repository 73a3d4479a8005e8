"""
Finite simplicial complexes of dimension at most 3.

A SimplicialComplex is an immutable, face-closed set of SimplexIds together
with its coface index (every simplex mapped to the simplices having it as a
proper face). Free-face detection and elementary collapse are pure
transformations returning new complexes.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set

from ..core.exceptions import MalformedInputError, PreconditionError
from .simplex import SimplexId, closure

logger = logging.getLogger("cat0.topology")


@dataclass(frozen=True, order=True)
class FreeFacePair:
    """A free face together with its unique coface.

    Ordering is lexicographic by free face, then coface.
    """

    free_face: SimplexId
    coface: SimplexId

    def to_dict(self) -> Dict[str, List[str]]:
        return {'coface': self.coface.to_list(), 'free_face': self.free_face.to_list()}

    def __str__(self) -> str:
        return f"{self.coface} \\ {self.free_face}"


class SimplicialComplex:
    """Face-closed set of simplices with a coface index."""

    __slots__ = ('_simplices', '_cofaces', '_by_dimension')

    def __init__(self, simplices: Iterable[SimplexId],
                 cofaces: Optional[Mapping[SimplexId, FrozenSet[SimplexId]]] = None):
        """
        Args:
            simplices: A face-closed collection (use build_complex for arbitrary input)
            cofaces: Precomputed coface index; derived when omitted
        """
        self._simplices: FrozenSet[SimplexId] = frozenset(simplices)
        if cofaces is None:
            cofaces = _derive_cofaces(self._simplices)
        self._cofaces: Dict[SimplexId, FrozenSet[SimplexId]] = dict(cofaces)
        by_dimension: Dict[int, List[SimplexId]] = {d: [] for d in range(4)}
        for simplex in self._simplices:
            by_dimension[simplex.dimension].append(simplex)
        self._by_dimension = {d: tuple(sorted(items)) for d, items in by_dimension.items()}

    # =======================================================================
    # Basic queries
    # =======================================================================

    @property
    def simplices(self) -> FrozenSet[SimplexId]:
        return self._simplices

    def __len__(self) -> int:
        return len(self._simplices)

    def __contains__(self, simplex: object) -> bool:
        return simplex in self._simplices

    def __iter__(self) -> Iterator[SimplexId]:
        return iter(sorted(self._simplices))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._simplices == other._simplices

    def __hash__(self) -> int:
        return hash(self._simplices)

    def __repr__(self) -> str:
        counts = ", ".join(str(len(self._by_dimension[d])) for d in range(4))
        return f"SimplicialComplex(f-vector=({counts}))"

    @property
    def dimension(self) -> int:
        for d in (3, 2, 1, 0):
            if self._by_dimension[d]:
                return d
        return -1

    def simplices_of_dim(self, dimension: int) -> Sequence[SimplexId]:
        """Sorted simplices of one dimension."""
        return self._by_dimension.get(dimension, ())

    @property
    def vertices(self) -> List[str]:
        return [s.vertices[0] for s in self._by_dimension[0]]

    @property
    def f_vector(self) -> List[int]:
        return [len(self._by_dimension[d]) for d in range(self.dimension + 1)]

    def cofaces(self, simplex: SimplexId) -> FrozenSet[SimplexId]:
        """Simplices having `simplex` as a proper face."""
        return self._cofaces.get(simplex, frozenset())

    def maximal_simplices(self) -> List[SimplexId]:
        return sorted(s for s in self._simplices if not self._cofaces.get(s))

    def span(self, labels: Iterable[str]) -> Optional[SimplexId]:
        """The simplex with exactly these vertices, if it belongs to the complex."""
        try:
            candidate = SimplexId.of(*set(labels))
        except MalformedInputError:
            return None
        return candidate if candidate in self._simplices else None

    def is_single_vertex(self) -> bool:
        return len(self._simplices) == 1

    # =======================================================================
    # Neighborhoods
    # =======================================================================

    def star(self, simplex: SimplexId) -> List[SimplexId]:
        """Open star: the simplex and all its cofaces."""
        return sorted({simplex} | set(self.cofaces(simplex)))

    def closed_star(self, simplex: SimplexId) -> 'SimplicialComplex':
        """Closed star as a subcomplex."""
        return self.subcomplex(self.star(simplex))

    def link(self, simplex: SimplexId) -> 'SimplicialComplex':
        """Link of a simplex; empty complex when the simplex is maximal."""
        faces = set()
        for coface in self.cofaces(simplex):
            rest = tuple(v for v in coface.vertices if v not in simplex.vertices)
            faces.add(SimplexId(rest))
        return self.subcomplex(faces) if faces else SimplicialComplex(())

    def subcomplex(self, simplices: Iterable[SimplexId]) -> 'SimplicialComplex':
        """Face closure of the given simplices (they must belong to the complex)."""
        chosen = list(simplices)
        for simplex in chosen:
            if simplex not in self._simplices:
                raise MalformedInputError(f"{simplex} is not in the complex",
                                          item=simplex.to_list())
        return SimplicialComplex(closure(chosen).keys())

    def relabel(self, mapping: Mapping[str, str]) -> 'SimplicialComplex':
        """Image under an injective relabeling of the vertices."""
        if len(set(mapping[v] for v in self.vertices)) != len(self.vertices):
            raise MalformedInputError("Relabeling must be injective")
        return SimplicialComplex(s.relabel(mapping) for s in self._simplices)

    def without(self, *removed: SimplexId) -> 'SimplicialComplex':
        """Plain set difference; the caller guarantees face-closedness."""
        gone = set(removed)
        cofaces = {}
        for simplex, ups in self._cofaces.items():
            if simplex in gone:
                continue
            cofaces[simplex] = ups - gone if ups & gone else ups
        return SimplicialComplex(self._simplices - gone, cofaces)

    def check_invariants(self) -> None:
        """Brute-force re-derivation of face closure and the coface index.

        Raises:
            MalformedInputError: if either invariant is broken
        """
        for simplex in self._simplices:
            for face in simplex.faces():
                if face not in self._simplices:
                    raise MalformedInputError(
                        f"Complex is not face-closed: {face} missing under {simplex}",
                        item=simplex.to_list(),
                    )
        rederived = {s: frozenset(t for t in self._simplices if s.is_face_of(t))
                     for s in self._simplices}
        for simplex in self._simplices:
            if rederived[simplex] != self.cofaces(simplex):
                raise MalformedInputError(
                    f"Coface index disagrees with the face relation at {simplex}",
                    item=simplex.to_list(),
                )


def _derive_cofaces(simplices: FrozenSet[SimplexId]) -> Dict[SimplexId, FrozenSet[SimplexId]]:
    index: Dict[SimplexId, Set[SimplexId]] = {s: set() for s in simplices}
    for simplex in simplices:
        for face in simplex.faces():
            if face in index:
                index[face].add(simplex)
    return {s: frozenset(ups) for s, ups in index.items()}


# =======================================================================
# Operations
# =======================================================================

def build_complex(maximal_simplices: Iterable[Sequence[str]]) -> SimplicialComplex:
    """
    Face closure of a list of vertex tuples.

    Args:
        maximal_simplices: Tuples of 1-4 distinct vertex labels

    Returns:
        The closed complex

    Raises:
        MalformedInputError: on empty input, empty or oversized tuples, or repeated labels
    """
    simplices = []
    for item in maximal_simplices:
        labels = list(item)
        if not 1 <= len(labels) <= 4:
            raise MalformedInputError(
                "Each simplex needs 1-4 vertex labels", item=[str(v) for v in labels]
            )
        simplices.append(SimplexId.of(*labels))
    if not simplices:
        raise MalformedInputError("A complex needs at least one simplex")
    complex_ = SimplicialComplex(closure(simplices).keys())
    logger.debug(f"Built complex {complex_!r} from {len(simplices)} simplices")
    return complex_


def free_faces(K: SimplicialComplex) -> List[FreeFacePair]:
    """
    Every (coface, free face) pair of the complex.

    A face is free when it is a proper face of exactly one simplex; that
    simplex is then maximal and one dimension higher.

    Returns:
        Pairs sorted by free face, then coface
    """
    pairs = []
    for simplex in K.simplices:
        ups = K.cofaces(simplex)
        if len(ups) == 1:
            (coface,) = ups
            pairs.append(FreeFacePair(free_face=simplex, coface=coface))
    pairs.sort()
    return pairs


def is_free(K: SimplicialComplex, pair: FreeFacePair) -> bool:
    return (pair.free_face in K and pair.coface in K
            and K.cofaces(pair.free_face) == frozenset((pair.coface,)))


def elementary_collapse(K: SimplicialComplex, pair: FreeFacePair) -> SimplicialComplex:
    """
    Remove a free face and its coface.

    Raises:
        PreconditionError: if the pair is not currently free in K
    """
    if not is_free(K, pair):
        raise PreconditionError(
            f"{pair.free_face} is not a free face of {pair.coface}",
            operation='elementary_collapse',
            subject=pair.to_dict(),
        )
    return K.without(pair.coface, pair.free_face)
