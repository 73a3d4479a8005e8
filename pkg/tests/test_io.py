"""Complex documents and deterministic report emission."""

import numpy as np
import pytest
import yaml

from src.core.exceptions import DocumentSyntaxError, InvalidMetricError, MalformedInputError
from src.core.utils.enums import Verdict
from src.geometry import MetricAssignment
from src.io import (
    ComplexDocument,
    dump_yaml,
    emit_document,
    emit_report,
    load_document,
    parse_complex,
    read_document,
)
from src.topology import SimplexId, build_complex
from src.verification import CheckReport

from .conftest import fixture_path

TRIANGLE = """
format_version: "1.0"
vertices: [a, b, c]
maximal_simplices:
  - [a, b, c]
edge_lengths:
  "a,b": 3.0
  "c, b": 4.0
  "a,c": 5.0
"""


# =======================================================================
# Parsing
# =======================================================================

def test_parse_defaults_to_unit_lengths():
    K, metric = parse_complex('format_version: "1.0"\nvertices: [a, b, c, d]\n'
                              'maximal_simplices:\n  - [d, c, b, a]\n')
    assert K.f_vector == [4, 6, 4, 1]
    assert metric == MetricAssignment.standard(K)


def test_parse_reads_edge_lengths_in_any_order():
    K, metric = parse_complex(TRIANGLE)
    assert metric.length('b', 'c') == 4.0
    assert metric.length('c', 'a') == 5.0
    assert list(K.maximal_simplices()) == [SimplexId.of('a', 'b', 'c')]


def test_isolated_vertices_are_kept():
    K, _ = parse_complex('format_version: "1.0"\nvertices: [a, b, z]\n'
                         'maximal_simplices:\n  - [a, b]\n')
    assert K.f_vector == [3, 1]
    assert SimplexId.of('z') in K


def test_non_positive_length_is_a_metric_error():
    with pytest.raises(InvalidMetricError) as excinfo:
        load_document(TRIANGLE.replace('3.0', '-3.0'))
    assert excinfo.value.details['simplex'] == ['a', 'b']


def test_unrealizable_triangle_names_the_simplex():
    with pytest.raises(InvalidMetricError) as excinfo:
        parse_complex(TRIANGLE.replace('5.0', '8.0'))
    assert excinfo.value.details['simplex'] == ['a', 'b', 'c']


def test_syntax_error_reports_line():
    text = 'format_version: "1.0"\nvertices:\n\t- a\n'
    with pytest.raises(DocumentSyntaxError) as excinfo:
        load_document(text)
    assert excinfo.value.line == 3
    assert excinfo.value.error_code == "DOCUMENT_SYNTAX"


@pytest.mark.parametrize("text, field", [
    ('vertices: [a]\nmaximal_simplices: [[a]]\n', 'format_version'),
    ('format_version: "2.0"\nvertices: [a]\nmaximal_simplices: [[a]]\n', 'format_version'),
    ('format_version: "1.0"\nvertices: []\nmaximal_simplices: [[a]]\n', 'vertices'),
    ('format_version: "1.0"\nvertices: [a, a]\nmaximal_simplices: [[a]]\n', 'vertices'),
    ('format_version: "1.0"\nvertices: [a, b]\nmaximal_simplices: [[a, x]]\n',
     'maximal_simplices'),
    ('format_version: "1.0"\nvertices: [a, b]\nmaximal_simplices: [[a, b]]\n'
     'edge_lengths:\n  "a,b": 1.0\n  "b,a": 1.0\n', 'edge_lengths'),
    ('format_version: "1.0"\nvertices: [a, b]\nmaximal_simplices: [[a, b]]\n'
     'edge_lengths:\n  "a,b": long\n', 'edge_lengths'),
    ('format_version: "1.0"\nvertices: [a, b]\nmaximal_simplices: [[a, b]]\n'
     'edge_lengths:\n  "a": 1.0\n', 'edge_lengths'),
])
def test_malformed_documents(text, field):
    with pytest.raises(MalformedInputError) as excinfo:
        load_document(text)
    assert excinfo.value.details['field'] == field


def test_document_must_be_a_mapping():
    with pytest.raises(MalformedInputError):
        load_document("- a\n- b\n")


def test_minor_format_versions_are_accepted():
    document = load_document('format_version: "1.3"\nvertices: [a]\nmaximal_simplices: [[a]]\n')
    assert document.format_version == "1.3"


def test_read_missing_file(tmp_path):
    with pytest.raises(MalformedInputError):
        read_document(tmp_path / "absent.yaml")


def test_fixture_metadata():
    document = read_document(fixture_path('bipyramid_chain'))
    assert document.name == 'bipyramid_chain'
    K, metric = document.build()
    assert metric.length('q', 'd') == 0.9
    assert K.dimension == 3


# =======================================================================
# Emission
# =======================================================================

def test_document_round_trip_preserves_exact_lengths():
    K = build_complex([['a', 'b', 'c']])
    metric = MetricAssignment.from_pairs({('a', 'b'): 0.1 + 0.2, ('b', 'c'): 1.0 / 3.0,
                                          ('a', 'c'): 0.5})
    text = emit_document(ComplexDocument.from_complex(K, metric, {'name': 'thirds'}))
    again, again_metric = parse_complex(text)
    assert again == K
    assert again_metric == metric
    assert again_metric.length('a', 'b') == 0.1 + 0.2
    assert yaml.safe_load(text)['metadata'] == {'name': 'thirds'}


def test_emission_is_deterministic():
    document = read_document(fixture_path('bipyramid_chain'))
    first = emit_document(document)
    assert first == emit_document(read_document(fixture_path('bipyramid_chain')))
    assert emit_document(load_document(first)) == first


def test_passing_report_has_no_witness_field():
    text = emit_report(CheckReport(check='homology', verdict=Verdict.PASS,
                                   details={'betti': [1, 0, 0, 0]}))
    data = yaml.safe_load(text)
    assert 'witness' not in data
    assert data['verdict'] == 'pass'
    assert data['details']['betti'] == [1, 0, 0, 0]


def test_emit_report_accepts_lists():
    reports = [CheckReport(check='x', verdict=Verdict.INCONCLUSIVE),
               CheckReport(check='y', verdict=Verdict.FAIL, worst_violation=2.0,
                           witness={'w': 1})]
    data = yaml.safe_load(emit_report(reports))
    assert [r['check'] for r in data] == ['x', 'y']
    assert data[1]['witness'] == {'w': 1}


def test_dump_yaml_handles_numpy_enums_and_tuples():
    data = {'array': np.array([0.5, 1.5]), 'scalar': np.float64(0.1), 'count': np.int64(3),
            'verdict': Verdict.FAIL, 'pair': ('a', 'b'), 'tiny': 1e-20, 'whole': 2.0}
    loaded = yaml.safe_load(dump_yaml(data))
    assert loaded == {'array': [0.5, 1.5], 'scalar': 0.1, 'count': 3, 'verdict': 'fail',
                      'pair': ['a', 'b'], 'tiny': 1e-20, 'whole': 2.0}
    assert list(loaded) == list(data)
