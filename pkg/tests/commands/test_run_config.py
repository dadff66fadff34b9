import argparse

import pytest
from pydantic import ValidationError

from src.commands.run_config import RunConfig, parse_int_list, parse_window
from src.core.settings import Settings


def test_parse_helpers():
    assert parse_int_list('7, 11,13') == [7, 11, 13]
    assert parse_int_list(None) is None
    assert parse_window('100:200') == (100, 200)


@pytest.mark.parametrize("kwargs", [
    dict(command='construct', expr='a(x) + x', epsilon=1.5),
    dict(command='construct', expr='a(x) + x', epsilon=0.0),
    dict(command='construct', expr='a(x) + x', seed=-1),
    dict(command='construct', expr='a(x) + x', budget=0),
    dict(command='construct'),
    dict(command='verify'),
    dict(command='verify', set_values=[0, 1, 3]),
    dict(command='assemble', l=0),
    dict(command='estimate', l=-1, k=2),
    dict(command='experiment', p=2),
    dict(command='construct', expr='a(x) + x', primes=[7, 11], prime_window=(10, 20)),
    dict(command='construct', expr='a(x) + x', prime_window=(20, 10)),
])
def test_invalid_configs(kwargs):
    with pytest.raises(ValidationError):
        RunConfig(**kwargs)


def test_resolved_primes():
    assert RunConfig(command='construct', expr='a(x) + x', primes=[7, 11]).resolved_primes() == [7, 11]
    assert RunConfig(command='construct', expr='a(x) + x', prime_window=(10, 20)).resolved_primes() == [11, 13, 17, 19]
    assert RunConfig(command='construct', expr='a(x) + x').resolved_primes() is None


def test_from_args_fills_defaults_from_settings():
    settings = Settings()
    args = argparse.Namespace(mode='verify', set='0,1,3', q=7, l=0, k=2, seed=None)
    config = RunConfig.from_args(args, settings)
    assert config.set_values == [0, 1, 3]
    assert config.seed == settings.random.seed
    assert config.budget == settings.verification.budget
    assert config.mode == 'auto'
    assert config.to_report()['set_values'] == [0, 1, 3]
