"""Verified collapse runs, engine settings and spines."""

import pytest

from src.core.config import Tolerances
from src.core.exceptions import ConfigurationError, InvalidMetricError
from src.core.utils.enums import CollapseStrategy, EngineOutcome, Verdict
from src.engine import DEPARTURE_NOTE, EngineConfig, run, spine
from src.engine import engine as engine_module
from src.geometry import MetricAssignment
from src.topology import SimplexId, build_complex
from src.verification import CheckReport


def _unverified(**overrides):
    return EngineConfig(verify_each_step=False, n_samples=0, **overrides)


# =======================================================================
# Engine settings
# =======================================================================

def test_engine_config_defaults_follow_the_profile():
    config = EngineConfig.from_config()
    assert config.verify_each_step is True
    assert config.n_samples == 1000
    assert config.seed == 0
    assert config.strategy is CollapseStrategy.PREFER_3_SIMPLICES
    assert config.verify_spine is False
    assert config.tolerances == Tolerances()


def test_engine_config_overrides_skip_none():
    config = EngineConfig.from_config(n_samples=25, seed=None, strategy='greedy_lex')
    assert config.n_samples == 25
    assert config.seed == 0
    assert config.strategy is CollapseStrategy.GREEDY_LEX


def test_verification_needs_samples():
    with pytest.raises(ConfigurationError) as excinfo:
        EngineConfig(verify_each_step=True, n_samples=0)
    assert excinfo.value.details['config_key'] == 'sampling.samples'
    assert _unverified().n_samples == 0


def test_unknown_strategy_is_rejected():
    with pytest.raises(ValueError):
        EngineConfig(strategy='widest_first')


# =======================================================================
# Runs
# =======================================================================

def test_verified_tetrahedron_run(tetra):
    K, metric = tetra
    result = run(K, metric, EngineConfig(n_samples=10))
    assert result.outcome is EngineOutcome.COLLAPSED_TO_POINT
    assert len(result.trace.steps) == 7
    assert result.final.is_single_vertex()

    first = result.trace.steps[0]
    assert first.coface == SimplexId.of('a', 'b', 'c', 'd')
    assert first.free_face == SimplexId.of('a', 'b', 'c')
    property_a, triangles = result.reports[0]
    assert property_a.check == 'property_a'
    # no tetrahedron is glued to the faces at d
    assert property_a.verdict is Verdict.INCONCLUSIVE
    assert property_a.details['apex'] == 'd'
    assert triangles.passed
    assert triangles.details['vacuous'] is True
    assert all(reports == [] for reports in result.reports[1:])
    assert result.failure is None


def test_verified_run_samples_the_collapsed_neighborhood(single_fin):
    K, metric = single_fin
    result = run(K, metric, EngineConfig(n_samples=10))
    assert result.outcome is EngineOutcome.COLLAPSED_TO_POINT
    first = result.trace.steps[0]
    assert first.coface == SimplexId.of('a', 'b', 'c', 'd')
    assert first.free_face == SimplexId.of('a', 'b', 'd')

    property_a, triangles = result.reports[0]
    assert property_a.verdict is Verdict.INCONCLUSIVE
    assert property_a.details['apex'] == 'c'
    # U' about c keeps the fin a,b,c,e, so the samples are real
    assert triangles.verdict is Verdict.PASS
    assert 'vacuous' not in triangles.details
    assert triangles.details['verdicts']['pass'] == 10
    assert triangles.details['strata']['no_crossing'] == 10
    assert len(triangles.details['empty_strata']) == 8
    assert triangles.details['max_flat_curvature'] < 1e-9
    assert triangles.worst_violation <= 1e-7

    second = result.reports[1]
    assert second[1].details['vacuous'] is True
    assert all(reports == [] for reports in result.reports[2:])


def test_trace_dictionary(tetra):
    K, metric = tetra
    data = run(K, metric, EngineConfig(n_samples=10)).to_dict()
    assert data['outcome'] == 'collapsed_to_point'
    assert data['step_count'] == 7
    assert len(data['steps']) == 7
    assert data['steps'][0]['coface'] == ['a', 'b', 'c', 'd']
    assert [r['check'] for r in data['steps'][0]['reports']] == ['property_a', 'cat0_triangle']
    assert data['final_f_vector'] == [1]
    assert data['metadata']['note'] == DEPARTURE_NOTE
    assert data['metadata']['n_samples'] == 10
    assert 'stuck' not in data and 'failed_step' not in data


def test_chain_collapses_tetrahedra_first(chain3):
    K, metric = chain3
    result = run(K, metric, _unverified())
    assert result.outcome is EngineOutcome.COLLAPSED_TO_POINT
    dims = [pair.coface.dimension for pair in result.trace.steps]
    assert dims[:3] == [3, 3, 3]
    assert len(dims) == 15
    assert all(reports == [] for reports in result.reports)


def test_dunce_hat_run_gets_stuck(dunce_hat):
    K, metric = dunce_hat
    result = run(K, metric, _unverified())
    assert result.outcome is EngineOutcome.STUCK_NO_FREE_FACE
    assert result.stuck.step == 0
    assert result.stuck.stuck == K
    data = result.to_dict()
    assert data['step_count'] == 0
    assert data['stuck']['stuck_f_vector'] == [8, 24, 17]
    assert data['final_f_vector'] == [8, 24, 17]


def test_run_validates_the_metric():
    K = build_complex([['a', 'b', 'c']])
    metric = MetricAssignment.from_pairs({('a', 'b'): 1.0, ('b', 'c'): 1.0, ('a', 'c'): 3.0})
    with pytest.raises(InvalidMetricError):
        run(K, metric, _unverified())


def test_failed_check_stops_the_run(tetra, monkeypatch):
    K, metric = tetra

    def failing_property_a(*args, **kwargs):
        return CheckReport(check='property_a', verdict=Verdict.FAIL, worst_violation=1e-7,
                           witness={'p': 'here'})

    monkeypatch.setattr(engine_module, 'property_a_check', failing_property_a)
    result = run(K, metric, EngineConfig(n_samples=10))
    assert result.outcome is EngineOutcome.VERIFICATION_FAILED
    assert result.failed_step == 0
    assert len(result.trace.steps) == 1
    assert result.final.f_vector == [4, 6, 3]
    data = result.to_dict()
    assert data['failed_step'] == 0
    assert data['witness'] == {'p': 'here'}


def test_run_is_deterministic(tetra):
    K, metric = tetra
    first = run(K, metric, EngineConfig(n_samples=10, seed=4)).to_dict()
    second = run(K, metric, EngineConfig(n_samples=10, seed=4)).to_dict()
    assert first == second


# =======================================================================
# Spines
# =======================================================================

def test_spine_removes_every_tetrahedron(chain3):
    K, _ = chain3
    S = spine(K)
    assert S.dimension == 2
    assert len(K) - len(S) == 6
    assert spine(S) == S


def test_spine_of_tetrahedron(tetra):
    K, _ = tetra
    assert spine(K).f_vector == [4, 6, 3]


def test_spine_of_two_dimensional_complex_is_itself(dunce_hat):
    K, _ = dunce_hat
    assert spine(K) == K
