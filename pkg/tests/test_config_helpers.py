# coding: utf-8
import pytest

from qfock.config import Choices, Csv, FAMILIES, positive_int, strtobool
from qfock.exceptions import UsageError


def test_csv():
    csv = Csv()
    assert ['coeff', 'crystal', 'wedge'] == csv('coeff, crystal, wedge')

    csv = Csv(int)
    assert [1, 2, 3, 4, 5] == csv('1,2,3,4,5')

    csv = Csv(post_process=tuple)
    assert ('QFOCK_SUITES', 'young') == csv('QFOCK_SUITES, young')

    csv = Csv(cast=lambda s: s.upper(), delimiter='\t', strip=' %*')
    assert ['VIRTUAL_ENV', 'IMPORTANT STUFF', 'TRAILING SPACES'] == \
        csv('%virtual_env%\t *important stuff*\t   trailing spaces   ')


def test_csv_quoted_parse():
    csv = Csv()
    assert ['foo', 'bar, baz', 'qux'] == csv(""" foo ,'bar, baz', 'qux'""")
    assert ['foo', 'bar, baz', 'qux'] == csv(''' foo ,"bar, baz", "qux"''')


def test_csv_none():
    assert [] == Csv()(None)
    assert () == Csv(post_process=tuple)(None)


def test_choices_flat_list():
    choices = Choices(FAMILIES)
    assert 'a2even' == choices('a2even')
    with pytest.raises(UsageError):
        choices('e8')


def test_choices_cast():
    choices = Choices([3, 5, 7], cast=int)
    assert 5 == choices('5')
    with pytest.raises(ValueError):
        choices('1')


def test_choices_inside_csv():
    suites = Csv(cast=Choices(['coeff', 'young']), post_process=tuple)
    assert ('coeff', 'young') == suites('coeff,young')
    with pytest.raises(UsageError):
        suites('coeff,fock')


@pytest.mark.parametrize("value", ("Y", "YES", "T", "TRUE", "ON", "1"))
def test_true_values(value):
    assert strtobool(value)


@pytest.mark.parametrize("value", ("N", "NO", "F", "FALSE", "OFF", "0"))
def test_false_values(value):
    assert strtobool(value) is False


def test_invalid_truth_value():
    with pytest.raises(ValueError, match="Invalid truth value"):
        strtobool("MAYBE")


def test_positive_int():
    assert 4 == positive_int('4')
    with pytest.raises(UsageError):
        positive_int('0')
    with pytest.raises(ValueError):
        positive_int('four')
