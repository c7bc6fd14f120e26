# coding: utf-8
import logging

import pytest

from qfock.coeff import q
from qfock.config import SUITES, Settings
from qfock.crystal import Elem, affine_type
from qfock.exceptions import UsageError
from qfock.verify import CheckResult, Report, Verifier, expand_suites, plain, run_suites
from qfock.wedge import Generator
from qfock.young import Diagram


FAST = Settings(delta_degree=1, worder=2, qorder=10)


def verifier(**options):
    options.setdefault('boxes', 4)
    options.setdefault('words', 5)
    options.setdefault('samples', 3)
    return Verifier(FAST, **options)


def test_expand_suites():
    assert expand_suites([]) == list(SUITES)
    assert expand_suites(['all']) == list(SUITES)
    assert expand_suites(['young', 'coeff', 'young']) == ['young', 'coeff']
    with pytest.raises(UsageError):
        expand_suites(['speed'])


def test_plain():
    assert plain((1 - q ** 2) / (1 + q)) == str((1 - q).as_expr())
    assert plain([Elem('phi', 2), Generator('f', 1)]) == [['phi', 2], 'f1']
    assert plain({(0, 1): Diagram((3, 3), 3)}) == {'[0, 1]': [3, 3]}


def test_report():
    report = Report([CheckResult('coeff', 'a', True, 1, 1), CheckResult('coeff', 'b', False, [2], [])])
    assert not report.passed
    assert [r.name for r in report.failures] == ['b']
    data = report.to_json()
    assert data['total'] == 2 and data['failed'] == 1
    assert data['checks'][1] == {'suite': 'coeff', 'check': 'b', 'passed': False, 'computed': [2], 'expected': []}


def test_failed_check_is_logged(caplog):
    v = verifier()
    v._suite = 'coeff'
    with caplog.at_level(logging.WARNING, logger='qfock.verify'):
        assert not v.expect('wrong', 1 + q, 1)
    assert 'coeff/wrong failed' in caplog.text


def test_coeff_suite():
    report = verifier().run(['coeff'])
    assert report.passed
    assert [r.name for r in report.results] == ['qbinom-pascal', 'euler-pentagonal', 'exp-log']


def test_crystal_suite():
    report = verifier(atype=affine_type('a2even', 1)).run(['crystal'])
    assert report.passed
    assert len(report) == 3


def test_wedge_suite():
    report = verifier(atype=affine_type('a1k', 1, 2)).run(['wedge'])
    assert report.passed
    assert {r.name.split(':')[1] for r in report.results} == {
        'relation-crystal-limit', 'rewrite-crystal-limit', 'confluence'}


def test_fock_suite():
    report = verifier(atype=affine_type('a2even', 1)).run(['fock'])
    assert report.passed, report.failures
    names = [r.name for r in report.results]
    assert 'a2even1:gamma1' in names and 'a1k-k3:gamma2' in names


def test_twopoint_suite_single_family():
    report = verifier(atype=affine_type('b1', 3)).run(['twopoint'])
    assert report.passed, report.failures
    assert report.results[0].name == 'b13-kappa0:recurrence'


def test_young_suite():
    report = verifier().run(['young'])
    assert report.passed, report.failures
    dims = [r for r in report.results if r.name == 'reduced-dimensions'][0]
    assert dims.computed == [1, 1, 1, 2, 2, 3, 4, 5, 6]


def test_dtwo_suite():
    report = verifier().run(['dtwo'])
    assert report.passed, report.failures
    assert [r.name for r in report.results][-1] == 'd2-n2:theta'


def test_run_suites_keeps_reports_apart():
    v = verifier()
    first = v.run(['coeff'])
    second = v.run(['coeff'])
    assert len(first) == len(second) == 3
    assert len(run_suites(['coeff'], FAST)) == 3
