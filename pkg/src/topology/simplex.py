"""
Unoriented simplices identified by their sorted vertex labels.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from ..core.exceptions import MalformedInputError

MAX_DIMENSION = 3


@dataclass(frozen=True, order=True)
class SimplexId:
    """A simplex of dimension 0-3, identified by its sorted vertex tuple."""

    vertices: Tuple[str, ...]

    def __post_init__(self):
        if not self.vertices:
            raise MalformedInputError("A simplex needs at least one vertex")
        if len(self.vertices) > MAX_DIMENSION + 1:
            raise MalformedInputError(
                f"Simplices have at most {MAX_DIMENSION + 1} vertices",
                item=list(self.vertices),
            )
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedInputError("Duplicate vertex in simplex", item=list(self.vertices))
        if tuple(sorted(self.vertices)) != self.vertices:
            raise MalformedInputError(
                "SimplexId vertices must be sorted; use SimplexId.of()",
                item=list(self.vertices),
            )

    @classmethod
    def of(cls, *labels) -> 'SimplexId':
        """Build from labels in any order (`SimplexId.of('c', 'a')` is edge a,c)."""
        if len(labels) == 1 and isinstance(labels[0], (tuple, list, frozenset, set)):
            labels = tuple(labels[0])
        strings = [str(label) for label in labels]
        if len(set(strings)) != len(strings):
            raise MalformedInputError("Duplicate vertex in simplex", item=strings)
        return cls(tuple(sorted(strings)))

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    def faces(self) -> Iterator['SimplexId']:
        """All proper non-empty faces, lowest dimension first."""
        for size in range(1, len(self.vertices)):
            for combo in combinations(self.vertices, size):
                yield SimplexId(combo)

    def facets(self) -> List['SimplexId']:
        """Codimension-one faces."""
        if len(self.vertices) == 1:
            return []
        return [SimplexId(combo) for combo in combinations(self.vertices, len(self.vertices) - 1)]

    def edges(self) -> List['SimplexId']:
        return [SimplexId(combo) for combo in combinations(self.vertices, 2)]

    def is_face_of(self, other: 'SimplexId') -> bool:
        """True for proper faces only."""
        return (len(self.vertices) < len(other.vertices)
                and set(self.vertices) <= set(other.vertices))

    def contains(self, other: 'SimplexId') -> bool:
        """Closed containment (a simplex contains itself)."""
        return set(other.vertices) <= set(self.vertices)

    def opposite(self, vertex: str) -> 'SimplexId':
        """The face spanned by every vertex except `vertex`."""
        if vertex not in self.vertices:
            raise MalformedInputError(f"{vertex!r} is not a vertex of {self}",
                                      item=list(self.vertices))
        return SimplexId(tuple(v for v in self.vertices if v != vertex))

    def join(self, *labels: str) -> 'SimplexId':
        return SimplexId.of(*self.vertices, *labels)

    def intersection(self, other: 'SimplexId') -> Tuple[str, ...]:
        return tuple(v for v in self.vertices if v in other.vertices)

    def relabel(self, mapping: Mapping[str, str]) -> 'SimplexId':
        return SimplexId.of(*(mapping[v] for v in self.vertices))

    def to_list(self) -> List[str]:
        return list(self.vertices)

    def __str__(self) -> str:
        return "(" + ",".join(self.vertices) + ")"


def edge(u: str, v: str) -> SimplexId:
    return SimplexId.of(u, v)


def closure(maximal: Iterable[SimplexId]) -> Dict[SimplexId, None]:
    """Face closure of a collection of simplices, in first-seen order."""
    seen: Dict[SimplexId, None] = {}
    for simplex in maximal:
        seen.setdefault(simplex, None)
        for face in simplex.faces():
            seen.setdefault(face, None)
    return seen
