# coding: utf-8
import pytest

from qfock.config import Config, RepositoryIni, UndefinedValueError


INIFILE = '''
[qfock]
KeyTrue=True
KeyFalse=off
KeyEmpty=

#CommentedKey=None
PercentIsEscaped=%%
Interpolation=%(KeyFalse)s
IgnoreSpace = text
KeyOverrideByEnv=NotThis
QFOCK_QORDER=24

[young]
boxes=6
'''


@pytest.fixture
def config(tmp_path):
    path = tmp_path / 'settings.ini'
    path.write_text(INIFILE, encoding='utf-8')
    return Config(RepositoryIni(str(path)))


def test_ini_comment(config):
    with pytest.raises(UndefinedValueError):
        config('CommentedKey')


def test_ini_percent_escape(config):
    assert '%' == config('PercentIsEscaped')


def test_ini_interpolation(config):
    assert 'off' == config('Interpolation')


def test_ini_bool(config):
    assert True is config('KeyTrue', cast=bool)
    assert False is config('KeyFalse', cast=bool)
    assert False is config('KeyEmpty', cast=bool)


def test_ini_os_environ_wins(config, monkeypatch):
    monkeypatch.setenv('KeyOverrideByEnv', 'This')
    assert 'This' == config('KeyOverrideByEnv')


def test_ini_support_space(config):
    assert 'text' == config('IgnoreSpace')


def test_ini_cast(config):
    assert 24 == config('QFOCK_QORDER', cast=int)


def test_ini_dotted_key_reads_other_section(config):
    assert '6' == config('young.boxes')
    with pytest.raises(UndefinedValueError):
        config('young.words')


def test_ini_repo_keyerror(config):
    with pytest.raises(KeyError):
        config.repository['UndefinedKey']
