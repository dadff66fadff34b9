import pytest

from main import create_parser
from src.commands import (
    ClassifyCommand, ConstructCommand, EstimateCommand, ExperimentCommand, VerifyCommand,
)
from src.commands.run_config import RunConfig
from src.core.exceptions import ExpressionParseError
from src.core.report_store import load_report


@pytest.fixture(scope="module")
def settings():
    from src.core.settings import Settings
    return Settings()


def test_classify_reports_case_and_handler(settings):
    results = ClassifyCommand(settings).execute("a(x)*b(y) + a(x) + x + b(y) + y")
    assert results['supported']
    assert results['tag'] == 'BASIC_IDENT'
    assert results['variables'] == 2


def test_classify_unsupported_is_not_an_error(settings):
    results = ClassifyCommand(settings).execute("a(x)*b(y)*c(z) + x")
    assert results['tag'] == 'UNSUPPORTED'
    assert not results['supported']
    assert results['reason']
    assert results['graph'].startswith('none')


def test_classify_unsupported_cycle_keeps_its_graph(settings):
    results = ClassifyCommand(settings).execute("a(x)*b(y) + b(y)*c(z) + c(z)*d(w) + d(w)*a(x)")
    assert results['tag'] == 'UNSUPPORTED'
    edges = results['graph'].split(', ')
    assert len(edges) == 4
    degrees = [sum(str(v) in e.split('-') for e in edges) for v in range(4)]
    assert degrees == [2, 2, 2, 2]


def test_classify_parse_error(settings):
    with pytest.raises(ExpressionParseError):
        ClassifyCommand(settings).execute("a(x) + * y")


def test_construct_writes_passing_report(settings, tmp_path):
    out = tmp_path / 'construct.json'
    config = RunConfig(command='construct', expr="a(x)*b(y) + a(x) + x + b(y) + y", primes=[5, 7], out=out)
    results = ConstructCommand(settings).execute(config)
    assert results['pass']
    assert results['expressions'][0]['tag'] == 'BASIC_IDENT'
    assert results['image_reports'][0]['mode'] == 'exhaustive'

    report = load_report(out)
    assert report['schema_version'] == '1.0'
    assert report['config']['primes'] == [5, 7]
    assert report['density_bound']['q'] == '35'


def test_construct_refuses_existing_report(settings, tmp_path):
    out = tmp_path / 'construct.json'
    out.write_text('{}')
    config = RunConfig(command='construct', expr="a(x) + x", primes=[5, 7], out=out)
    with pytest.raises(FileExistsError):
        ConstructCommand(settings).execute(config)


def test_verify_explicit_set(settings, tmp_path):
    config = RunConfig(command='verify', set_values=[0, 1, 3], q=7, l=0, k=2, out=tmp_path / 'set.json')
    results = VerifyCommand(settings).execute(config)
    assert results['cover']['passed']
    assert results['sumset']['size'] == 6
    assert results['pass']


def test_verify_explicit_set_misses_epsilon(settings, tmp_path):
    config = RunConfig(command='verify', set_values=[0, 1, 3], q=7, l=0, k=2, epsilon=0.5,
                       out=tmp_path / 'set.json')
    results = VerifyCommand(settings).execute(config)
    assert not results['sumset']['meets_epsilon']
    assert not results['pass']


def test_verify_expression_runs_oracle(settings, tmp_path):
    config = RunConfig(command='verify', expr="a(x)*b(y) + a(x) + x + b(y) + y", primes=[5, 7],
                       samples=200, out=tmp_path / 'verify.json')
    results = VerifyCommand(settings).execute(config)
    assert results['oracle']['run']
    assert results['oracle']['agrees']
    assert [r['mode'] for r in results['image_reports']] == ['exhaustive', 'sampled']
    assert results['pass']


def test_estimate_relaxed_two_linear_summands(settings, tmp_path):
    config = RunConfig(command='estimate', l=0, k=2, epsilon=0.5, base_primes=[5, 7, 11],
                       assembly_mode='relaxed', out=tmp_path / 'estimate.json')
    results = EstimateCommand(settings).execute(config)
    assert results['feasible']
    assert results['infeasible_stage'] is None


def test_estimate_strict_reports_failing_stage(settings, tmp_path):
    config = RunConfig(command='estimate', l=1, k=0, epsilon=0.5,
                       assembly_mode='strict', out=tmp_path / 'estimate.json')
    results = EstimateCommand(settings).execute(config)
    assert not results['pass']
    assert results['infeasible_stage'] == 2


def test_experiment_small_moduli(settings, tmp_path):
    config = RunConfig(command='experiment', p=2, q=3, out=tmp_path / 'experiment.json')
    results = ExperimentCommand(settings).execute(config)
    assert results['pass']
    assert results['modulus']['q'] == '6'


def test_parser_subcommands():
    parser = create_parser()
    args = parser.parse_args(['construct', '--expr', 'a(x) + x', '--primes', '7,11', '--seed', '3'])
    assert args.mode == 'construct'
    assert args.primes == '7,11'
    assert args.seed == 3

    args = parser.parse_args(['estimate', '--l', '1', '--k', '0', '--strict'])
    assert args.assembly_mode == 'strict'

    with pytest.raises(SystemExit):
        parser.parse_args(['verify', '--expr', 'a(x) + x', '--set', '0,1'])
