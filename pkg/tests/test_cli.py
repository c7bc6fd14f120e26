# coding: utf-8
import json

import pytest

from qfock import cli
from qfock.coeff import q, ratq_str
from qfock.exceptions import TheoremViolation


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in ('QFOCK_DELTA_DEGREE', 'QFOCK_WORDER', 'QFOCK_QORDER', 'QFOCK_WINDOW', 'QFOCK_SEED',
                'QFOCK_LOG_LEVEL', 'QFOCK_SUITES'):
        monkeypatch.delenv(key, raising=False)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_gamma(capsys):
    code, report = run(capsys, 'gamma', '--type', 'a2even', '--rank', '1', '--n', '1')
    assert code == 0
    assert report['gamma_text'] == ratq_str((1 - q ** 6) / (1 - q ** 4))
    assert report['agrees'] is True


def test_straighten_normal_word_is_identity(capsys):
    code, report = run(capsys, 'straighten', '--type', 'a2even', '--word', '[[1, -1], [-1, 0]]')
    assert code == 0
    assert report['identity'] is True


def test_straighten_rewrites(capsys):
    code, report = run(capsys, 'straighten', '--type', 'a2even', '--word', '[[-1, 0], [1, -1]]',
                       '--strategy', 'leftmost')
    assert code == 0
    assert report['identity'] is False
    assert report['output']['terms'][0]['word'] == [[1, -1], [-1, 0]]


def test_fock_act(capsys):
    code, report = run(capsys, 'fock-act', '--type', 'a2even', '--generator', 'f1')
    assert code == 0
    assert [t['prefix'] for t in report['output']['terms']] == [[[-1, 0]]]


def test_twopoint(capsys):
    code, report = run(capsys, 'twopoint', '--type', 'a2even', '--worder', '3', '--qorder', '12')
    assert code == 0
    assert report['recurrence_failures'] == []
    assert len(report['g']) == 4


def test_young(capsys):
    code, report = run(capsys, 'young', '--rank', '1', '--generator', 'f1', '--diagram', '2')
    assert code == 0
    assert [entry['diagram'] for entry in report['result']] == [[3], [2, 1]]


def test_dtwo(capsys):
    code, report = run(capsys, 'dtwo', '--rank', '2', '--q', '1/3', '--z', '1/5')
    assert code == 0
    assert report['n'] == 2 and report['q'] == '1/3'
    code, report = run(capsys, 'dtwo', '--check', 'normalization')
    assert code == 0 and report['passed'] is True


def test_tables(capsys):
    code, report = run(capsys, 'tables', '--type', 'd2', '--rank', '2')
    assert code == 0
    assert report['family'] == 'd2'


def test_verify(capsys):
    code, report = run(capsys, 'verify', '--suite', 'coeff')
    assert code == 0
    assert report['passed'] is True and report['failed'] == 0


def test_verify_twopoint_family(capsys):
    code, report = run(capsys, 'verify', '--suite', 'twopoint', '--type', 'b1', '--rank', '3',
                       '--worder', '2', '--qorder', '10')
    assert code == 0
    assert all(check['passed'] for check in report['checks'])


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli.Verifier, 'suite_coeff', lambda self: self.expect('broken', 1, 2))
    code, report = run(capsys, 'verify', '--suite', 'coeff')
    assert code == 1
    assert report['checks'] == [
        {'suite': 'coeff', 'check': 'broken', 'passed': False, 'computed': 1, 'expected': 2}]


def test_out_file(capsys, tmp_path):
    path = tmp_path / 'report.json'
    assert cli.main(['tables', '--type', 'a2even', '--out', str(path)]) == 0
    assert capsys.readouterr().out == ''
    assert json.loads(path.read_text(encoding='utf-8'))['family'] == 'a2even'


@pytest.mark.parametrize("argv", [
    ['tables', '--type', 'a2odd', '--rank', '1'],
    ['straighten', '--word', 'not json'],
    ['young', '--diagram', '2,2'],
    ['young', '--diagram', 'two'],
    ['fock-act', '--generator', 'z1'],
    ['twopoint', '--worder', '0'],
    ['dtwo', '--rank', '1'],
])
def test_usage_errors(capsys, argv):
    assert cli.main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ''
    assert captured.err.startswith('qfock {}: '.format(argv[0]))


def test_bad_choice_is_rejected_by_parser(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(['tables', '--type', 'e8'])
    assert info.value.code == 2


def test_theorem_violation(capsys, monkeypatch):
    def broken(args, settings):
        raise TheoremViolation('singular fixed-point system')

    monkeypatch.setitem(cli.COMMANDS, 'tables', broken)
    code, report = run(capsys, 'tables')
    assert code == 3
    assert report['kind'] == 'theorem-violation'


def test_verbose_lowers_log_level():
    args = cli.build_parser().parse_args(['tables', '-vv'])
    assert cli._settings(args).log_level == 'DEBUG'
    args = cli.build_parser().parse_args(['tables', '-v', '--seed', '5'])
    settings = cli._settings(args)
    assert settings.log_level == 'INFO'
    assert settings.seed == 5
