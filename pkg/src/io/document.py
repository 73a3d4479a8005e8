"""
Complex documents: a YAML mapping naming vertices, maximal simplices and
optional edge lengths.

    format_version: "1.0"
    vertices: [a, b, c, d]
    maximal_simplices:
      - [a, b, c, d]
    edge_lengths:          # optional; every length 1.0 when omitted
      "a,b": 1.0
      ...
    metadata:              # optional
      name: tetra
      expected_outcome: collapsed_to_point

Edge keys join the two labels, sorted, with a comma.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

import yaml

from ..core.config import Tolerances
from ..core.exceptions import DocumentSyntaxError, InvalidMetricError, MalformedInputError
from ..geometry import MetricAssignment
from ..topology import SimplexId, SimplicialComplex, build_complex
from .report import dump_yaml

logger = logging.getLogger("cat0.io")

FORMAT_VERSION = "1.0"


def edge_key(u: str, v: str) -> str:
    return ",".join(sorted((u, v)))


@dataclass
class ComplexDocument:
    vertices: List[str]
    maximal_simplices: List[List[str]]
    edge_lengths: Optional[Dict[str, float]] = None
    format_version: str = FORMAT_VERSION
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def name(self) -> Optional[str]:
        return self.metadata.get('name')

    @classmethod
    def from_mapping(cls, data: Any) -> 'ComplexDocument':
        """
        Structural validation of a loaded mapping.

        Raises:
            MalformedInputError: on missing fields, unknown labels or bad values
            InvalidMetricError: on non-positive lengths
        """
        if not isinstance(data, Mapping):
            raise MalformedInputError("A complex document must be a mapping")
        version = data.get('format_version')
        if version is None:
            raise MalformedInputError("Missing format_version", field='format_version')
        version = str(version)
        if version.split('.')[0] != FORMAT_VERSION.split('.')[0]:
            raise MalformedInputError(f"Unsupported format_version {version}",
                                      field='format_version')

        raw_vertices = data.get('vertices')
        if not isinstance(raw_vertices, list) or not raw_vertices:
            raise MalformedInputError("vertices must be a non-empty list", field='vertices')
        vertices = [str(v) for v in raw_vertices]
        if len(set(vertices)) != len(vertices):
            raise MalformedInputError("Duplicate vertex label", item=vertices, field='vertices')
        known = set(vertices)

        raw_simplices = data.get('maximal_simplices')
        if not isinstance(raw_simplices, list) or not raw_simplices:
            raise MalformedInputError("maximal_simplices must be a non-empty list",
                                      field='maximal_simplices')
        simplices = []
        for entry in raw_simplices:
            if not isinstance(entry, list) or not entry:
                raise MalformedInputError("Each simplex is a non-empty list of labels",
                                          item=entry, field='maximal_simplices')
            labels = [str(v) for v in entry]
            unknown = [v for v in labels if v not in known]
            if unknown:
                raise MalformedInputError(f"Unknown vertex label {unknown[0]!r}",
                                          item=labels, field='maximal_simplices')
            simplices.append(labels)

        lengths = None
        raw_lengths = data.get('edge_lengths')
        if raw_lengths is not None:
            if not isinstance(raw_lengths, Mapping):
                raise MalformedInputError("edge_lengths must be a mapping", field='edge_lengths')
            lengths = {}
            for key, value in raw_lengths.items():
                parts = [p.strip() for p in str(key).split(',')]
                if len(parts) != 2 or parts[0] == parts[1]:
                    raise MalformedInputError(f"Edge key {key!r} must name two labels",
                                              item=key, field='edge_lengths')
                unknown = [v for v in parts if v not in known]
                if unknown:
                    raise MalformedInputError(f"Unknown vertex label {unknown[0]!r}",
                                              item=key, field='edge_lengths')
                canonical = edge_key(*parts)
                if canonical in lengths:
                    raise MalformedInputError(f"Edge {canonical} is given twice",
                                              item=key, field='edge_lengths')
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise MalformedInputError(f"Length of {canonical} must be a number",
                                              item=value, field='edge_lengths')
                if not float(value) > 0:
                    raise InvalidMetricError(f"Edge {canonical} needs a positive length, "
                                             f"got {value}", simplex=canonical.split(','),
                                             lengths=[float(value)])
                lengths[canonical] = float(value)

        metadata = data.get('metadata') or {}
        if not isinstance(metadata, Mapping):
            raise MalformedInputError("metadata must be a mapping", field='metadata')
        return cls(vertices=vertices, maximal_simplices=simplices, edge_lengths=lengths,
                   format_version=version, metadata=dict(metadata))

    @classmethod
    def from_complex(cls, K: SimplicialComplex, metric: Optional[MetricAssignment] = None,
                     metadata: Optional[Dict[str, Any]] = None) -> 'ComplexDocument':
        """Canonical document of a complex; lengths are written out when a metric is given."""
        lengths = None
        if metric is not None:
            lengths = {edge_key(*e.vertices): value for e, value in metric.items()}
        return cls(
            vertices=list(K.vertices),
            maximal_simplices=[m.to_list() for m in K.maximal_simplices()],
            edge_lengths=lengths,
            metadata=dict(metadata or {}),
        )

    def build(self, tolerances: Optional[Tolerances] = None
              ) -> Tuple[SimplicialComplex, MetricAssignment]:
        """
        The face closure and its validated metric.

        Raises:
            InvalidMetricError: for missing lengths, lengths of edges outside
                the complex, or unrealizable simplices (named in the error)
        """
        used = {v for simplex in self.maximal_simplices for v in simplex}
        isolated = [[v] for v in self.vertices if v not in used]
        K = build_complex(self.maximal_simplices + isolated)
        if self.edge_lengths is None:
            metric = MetricAssignment.standard(K)
        else:
            metric = MetricAssignment({SimplexId.of(*key.split(',')): value
                                       for key, value in self.edge_lengths.items()})
        metric.validate(K, tolerances)
        return K, metric

    def to_mapping(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'format_version': self.format_version,
            'vertices': list(self.vertices),
            'maximal_simplices': [list(s) for s in self.maximal_simplices],
        }
        if self.edge_lengths is not None:
            data['edge_lengths'] = dict(sorted(self.edge_lengths.items()))
        if self.metadata:
            data['metadata'] = dict(self.metadata)
        return data


def load_document(text: str) -> ComplexDocument:
    """
    Parse document text.

    Raises:
        DocumentSyntaxError: with 1-based line and column of the YAML error
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, 'problem_mark', None)
        raise DocumentSyntaxError(
            f"Cannot parse complex document: {getattr(exc, 'problem', exc)}",
            line=mark.line + 1 if mark else None,
            column=mark.column + 1 if mark else None,
        ) from exc
    return ComplexDocument.from_mapping(data)


def parse_complex(text: str, tolerances: Optional[Tolerances] = None
                  ) -> Tuple[SimplicialComplex, MetricAssignment]:
    """Document text to (face closure, validated metric)."""
    K, metric = load_document(text).build(tolerances)
    logger.debug(f"Parsed {K!r}")
    return K, metric


def read_document(path: Union[str, Path]) -> ComplexDocument:
    """
    Load a document file.

    Raises:
        MalformedInputError: if the file cannot be read
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise MalformedInputError(f"Cannot read {path}: {exc.strerror}", item=str(path)) from exc
    return load_document(text)


def emit_document(document: ComplexDocument) -> str:
    return dump_yaml(document.to_mapping())
