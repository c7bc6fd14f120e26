# coding: utf-8
import pytest

from qfock.config import Config, RepositoryEmpty, RepositoryEnv, Settings, load_settings
from qfock.exceptions import UsageError


def test_defaults(monkeypatch):
    for key in ('QFOCK_DELTA_DEGREE', 'QFOCK_WORDER', 'QFOCK_QORDER', 'QFOCK_WINDOW', 'QFOCK_SEED',
                'QFOCK_LOG_LEVEL', 'QFOCK_SUITES'):
        monkeypatch.delenv(key, raising=False)
    settings = load_settings(Config(RepositoryEmpty()))
    assert settings == Settings()
    assert (settings.delta_degree, settings.worder, settings.qorder, settings.window) == (3, 4, 20, 2)
    assert settings.suites == ()


def test_from_env_file(tmp_path, monkeypatch):
    monkeypatch.delenv('QFOCK_WORDER', raising=False)
    monkeypatch.setenv('QFOCK_SEED', '11')
    path = tmp_path / '.env'
    path.write_text('QFOCK_WORDER=6\nQFOCK_LOG_LEVEL=debug\nQFOCK_SUITES=coeff,dtwo\nQFOCK_SEED=3\n',
                    encoding='utf-8')
    settings = load_settings(Config(RepositoryEnv(str(path))))
    assert settings.worder == 6
    assert settings.seed == 11
    assert settings.log_level == 'DEBUG'
    assert settings.suites == ('coeff', 'dtwo')


@pytest.mark.parametrize("key,value", [
    ('QFOCK_WORDER', '0'), ('QFOCK_QORDER', '-2'), ('QFOCK_LOG_LEVEL', 'loud'), ('QFOCK_SUITES', 'coeff,speed'),
])
def test_invalid_values(monkeypatch, key, value):
    monkeypatch.setenv(key, value)
    with pytest.raises(UsageError):
        load_settings(Config(RepositoryEmpty()))


def test_replace_skips_none():
    settings = Settings().replace(worder=2, qorder=None)
    assert settings.worder == 2
    assert settings.qorder == 20
    with pytest.raises(AttributeError):
        settings.worder = 3
