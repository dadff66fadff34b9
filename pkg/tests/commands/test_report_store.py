import numpy as np
import pytest

from src.commands.common import exit_code_for
from src.core.exceptions import (
    BudgetExceededError, CertificateViolation, ExpressionParseError, InfeasibleError, PrimeError,
)
from src.core.report_store import ReportStore, load_report, load_table, strip_timing
from src.core.settings import ExitCodes


def test_small_tables_stay_inline(tmp_path):
    store = ReportStore(tmp_path / 'run.json')
    ref = store.table('primes', np.array([5, 7, 11]))
    assert ref['values'] == [5, 7, 11]
    assert load_table(tmp_path / 'run.json', ref).tolist() == [5, 7, 11]
    assert not store.table_dir.exists()


def test_large_tables_go_to_checked_sidecars(tmp_path):
    path = tmp_path / 'run.json'
    store = ReportStore(path, inline_limit=4)
    values = np.arange(20, dtype=np.int64).reshape(4, 5)
    ref = store.table('cases', values)
    assert ref['path'] == 'run_tables/cases.npy'
    assert len(ref['sha256']) == 64
    assert np.array_equal(load_table(path, ref), values)

    second = store.table('cases', values)
    assert second['path'] == 'run_tables/cases_1.npy'

    np.save(tmp_path / ref['path'], values + 1, allow_pickle=False)
    with pytest.raises(ValueError):
        load_table(path, ref)


def test_write_refuses_overwrite_without_force(tmp_path):
    path = tmp_path / 'run.json'
    ReportStore(path).write({'pass': True, 'wall_time': 0.1})
    report = load_report(path)
    assert report['schema_version'] == '1.0'
    assert strip_timing(report) == {'schema_version': '1.0', 'pass': True}

    with pytest.raises(FileExistsError):
        ReportStore(path).write({'pass': False})
    ReportStore(path, force=True).write({'pass': False})
    assert load_report(path)['pass'] is False


def test_strip_timing_recurses():
    report = {'a': [{'wall_time': 1, 'b': 2}], 'timing': {'x': 1}}
    assert strip_timing(report) == {'a': [{'b': 2}]}


@pytest.mark.parametrize("error,code", [
    (InfeasibleError("too many cases"), ExitCodes.INFEASIBLE),
    (BudgetExceededError(10**9, 10**8), ExitCodes.INFEASIBLE),
    (CertificateViolation("escaped"), ExitCodes.CHECK_FAILURE),
    (ExpressionParseError("bad", 3, "a(x"), ExitCodes.USAGE_ERROR),
    (PrimeError("not prime"), ExitCodes.USAGE_ERROR),
    (FileExistsError("exists"), ExitCodes.USAGE_ERROR),
    (RuntimeError("boom"), ExitCodes.CHECK_FAILURE),
])
def test_exit_codes(error, code):
    assert exit_code_for(error) == code
