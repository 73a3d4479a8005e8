"""Command-line dispatch and exit codes."""

import logging

import pytest
import yaml

from src.io import cli_dispatch

from .conftest import fixture_path

THIRDS = '0.3333333333333333,0.3333333333333333,0.3333333333333334'


@pytest.fixture(autouse=True)
def _detach_cli_handlers():
    """Console handlers bind to the captured stderr of the test that added them."""
    yield
    root = logging.getLogger('cat0')
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    root.setLevel(logging.NOTSET)


def _run(capsys, *argv):
    code = cli_dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate(capsys):
    code, out, _ = _run(capsys, 'validate', fixture_path('tetra'))
    assert code == 0
    data = yaml.safe_load(out)
    assert data['command'] == 'validate'
    assert data['name'] == 'tetra'
    assert data['f_vector'] == [4, 6, 4, 1]
    assert data['euler_characteristic'] == 1
    assert data['betti'] == [1, 0, 0, 0]
    assert data['free_pairs'] == 4
    assert data['edge_lengths'] == {'min': 1.0, 'max': 1.0}


def test_check_cat0_fails_at_a_cone_point(capsys):
    code, out, _ = _run(capsys, 'check-cat0', fixture_path('degree5'), '--samples', '12')
    assert code == 1
    data = yaml.safe_load(out)
    assert data['verdict'] == 'fail'
    checks = {r['check']: r for r in data['reports']}
    assert set(checks) == {'edge_link', 'four_point', 'cat0_triangle', 'homology'}
    assert checks['edge_link']['verdict'] == 'fail'
    assert checks['edge_link']['witness']['vertex'] == 'o'
    assert checks['homology']['verdict'] == 'pass'


def test_property_a_without_crossings_is_inconclusive(capsys):
    code, out, _ = _run(capsys, 'property-a', fixture_path('single_fin'),
                        '--sigma', 'a,b,c,d', '--alpha', 'b,c,d', '--samples', '10')
    assert code == 0
    assert yaml.safe_load(out)['verdict'] == 'inconclusive'


def test_property_a_rejects_a_non_free_pair(capsys):
    code, _, err = _run(capsys, 'property-a', fixture_path('regular_star'),
                        '--sigma', 'a,b,c,d', '--alpha', 'a,b,c', '--samples', '10')
    assert code == 2
    assert 'PRECONDITION' in err


def test_geodesic_across_a_flat_hexagon(capsys):
    code, out, _ = _run(capsys, 'geodesic', fixture_path('degree6'),
                        '--p', 'o,v1,v2:' + THIRDS,
                        '--q', 'o,v3,v4:' + THIRDS,
                        '--oracle-resolution', '0')
    assert code == 0
    data = yaml.safe_load(out)
    assert data['distance'] == pytest.approx(1.0, abs=1e-8)
    assert 'oracle' not in data
    assert data['geodesic']['length'] == pytest.approx(1.0, abs=1e-8)


def test_geodesic_balance_point(capsys):
    code, out, _ = _run(capsys, 'geodesic', fixture_path('degree6'),
                        '--p', 'o,v1,v2:' + THIRDS,
                        '--q', 'o,v2,v3:' + THIRDS,
                        '--edge', 'o,v2')
    assert code == 0
    data = yaml.safe_load(out)
    assert data['closed_form']['parameter'] == pytest.approx(0.5, abs=1e-9)
    assert data['bisection']['parameter'] == pytest.approx(0.5, abs=1e-9)


def test_geodesic_needs_sigma_and_alpha_together(capsys):
    code, _, _ = _run(capsys, 'geodesic', fixture_path('two_tetra'),
                      '--p', 'a,b,c,d:0.25,0.25,0.25,0.25',
                      '--q', 'b,c,d,e:0.25,0.25,0.25,0.25',
                      '--sigma', 'a,b,c,d')
    assert code == 2


def test_collapse_tetrahedron(capsys):
    code, out, _ = _run(capsys, 'collapse', fixture_path('tetra'), '--samples', '10')
    assert code == 0
    data = yaml.safe_load(out)
    assert data['outcome'] == 'collapsed_to_point'
    assert data['step_count'] == 7
    assert data['metadata']['name'] == 'tetra'


def test_collapse_dunce_hat_gets_stuck(capsys):
    code, out, _ = _run(capsys, 'collapse', fixture_path('dunce_hat'), '--no-verify')
    assert code == 1
    data = yaml.safe_load(out)
    assert data['outcome'] == 'stuck_no_free_face'
    assert data['stuck']['stuck_f_vector'] == [8, 24, 17]


def test_reports_written_to_file_are_reproducible(capsys, tmp_path):
    first, second = tmp_path / "one.yaml", tmp_path / "nested" / "two.yaml"
    for out in (first, second):
        code, stdout, _ = _run(capsys, 'collapse', fixture_path('chain3'), '--no-verify',
                               '--out', str(out))
        assert code == 0
        assert stdout == ''
    assert first.read_bytes() == second.read_bytes()


@pytest.mark.parametrize("argv", [
    [],
    ['unfold', 'x.yaml'],
    ['validate'],
    ['property-a', 'fixtures/tetra.yaml', '--sigma', 'a,b,c,d'],
    ['validate', 'x.yaml', '--samples', 'many'],
])
def test_usage_errors_exit_with_two(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert 'usage' in err


def test_unreadable_input_exits_with_two(capsys, tmp_path):
    code, _, err = _run(capsys, 'validate', str(tmp_path / "absent.yaml"))
    assert code == 2
    assert 'MALFORMED_INPUT' in err


def test_bad_point_exits_with_two(capsys):
    code, _, _ = _run(capsys, 'geodesic', fixture_path('degree6'), '--p', 'o,v1,v2',
                      '--q', 'o,v3,v4:0.2,0.4,0.4')
    assert code == 2


def test_help_exits_cleanly(capsys):
    code, out, _ = _run(capsys, '--help')
    assert code == 0
    assert 'check-cat0' in out
