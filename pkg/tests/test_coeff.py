# coding: utf-8
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qfock.coeff import (
    ONE, ZERO, QSeries, WSeries, at_q0, at_value, lift_w, mono, pochhammer, q, qbinom,
    qint, qw_q, qw_w, ratq, ratq_arith, ratq_from_json, ratq_to_json, ratq_to_series,
    rational_to_wseries, series_exp, series_log, valuation,
)
from qfock.exceptions import DivergentProductError, DivisionByZero, PoleError, UsageError


def _poly(coeffs):
    result = ZERO
    for e, c in enumerate(coeffs):
        result += c * q ** e
    return result


small_poly = st.lists(st.integers(-3, 3), min_size=1, max_size=4).map(_poly)
# denominators with a nonzero constant term keep valuations non-negative
unit_poly = st.lists(st.integers(-3, 3), max_size=3).map(lambda cs: 1 + q * _poly(cs or [0]))
ratq_values = st.builds(lambda n, d: n / d, small_poly, unit_poly.filter(bool))


def test_qint_square():
    assert qint(2) ** 2 == q ** 2 + 2 + q ** -2


def test_qint_scaled():
    assert qint(2, 2) == q ** 2 + q ** -2
    assert qint(0) == ZERO


@pytest.mark.parametrize("m", range(1, 7))
def test_qbinom_pascal(m):
    for n in range(1, m):
        assert qbinom(m, n) == q ** n * qbinom(m - 1, n) + q ** (n - m) * qbinom(m - 1, n - 1)


def test_qbinom_classical_limit():
    assert at_value(qbinom(5, 2), 1) == 10
    assert at_value(qbinom(6, 3, 2), 1) == 20


def test_qbinom_symmetry_and_range():
    assert qbinom(7, 3) == qbinom(7, 4)
    assert qbinom(3, 5) == ZERO
    assert qbinom(3, -1) == ZERO


def test_valuation():
    assert valuation((1 + q) * q ** -2) == -2
    assert valuation(q ** 3 / (2 - q)) == 3
    assert valuation(0) is None


def test_at_q0():
    assert at_q0((1 + q) / (2 + q)) == Fraction(1, 2)
    assert at_q0(q / (1 - q)) == 0
    with pytest.raises(PoleError):
        at_q0(1 / q)


def test_at_value():
    assert at_value((q ** 2 - 1) / (q - 2), 1) == 0
    assert at_value(qint(3), Fraction(1, 2)) == Fraction(1, 4) + 1 + 4
    with pytest.raises(PoleError):
        at_value(1 / (q - 2), 2)


def test_ratq_arith_division_by_zero():
    with pytest.raises(DivisionByZero):
        ratq_arith(q, 0, 'div')
    assert ratq_arith(q, q, 'div') == ONE


def test_ratq_rejects_floats():
    with pytest.raises(UsageError):
        ratq(0.5)


def test_geometric_series():
    s = ratq_to_series(1 / (1 + q ** 2), 8)
    assert s.terms == {0: 1, 2: -1, 4: 1, 6: -1}
    assert s.order == 8


def test_series_with_negative_valuation():
    s = ratq_to_series(q ** -1 / (1 - q), 4)
    assert s.terms == {e: 1 for e in range(-1, 4)}


def test_qseries_inverse():
    s = QSeries({0: 1, 1: -1}, 6)
    assert s.inverse().terms == {e: 1 for e in range(6)}
    with pytest.raises(DivisionByZero):
        QSeries.zero(5).inverse()


def test_qseries_coeff_beyond_order():
    with pytest.raises(UsageError):
        QSeries.one(3).coeff(3)


def test_exp_log_inverse():
    s = WSeries([ZERO, q, q ** 2, ONE])
    assert series_log(series_exp(s)) == s


def test_exp_requires_zero_constant_term():
    with pytest.raises(UsageError):
        series_exp(WSeries([ONE, q]))
    with pytest.raises(UsageError):
        series_log(WSeries([q, ONE]))


def test_pochhammer_expansion():
    product = pochhammer(mono(1, 2, 1), mono(1, 4), 16, 2)
    assert product[0].truncate(16) == QSeries.one(16)
    assert product[1].truncate(12).terms == {2: -1, 6: -1, 10: -1}
    assert product[2].truncate(16) == ratq_to_series(q ** 8 / ((1 - q ** 4) * (1 - q ** 8)), 16)


def test_pochhammer_divergent():
    with pytest.raises(DivergentProductError):
        pochhammer(mono(1, 0, 1), mono(1, 0), 10, 2)


def test_rational_to_wseries():
    f = 1 / (1 - qw_q * qw_w)
    assert rational_to_wseries(f, 3).coeffs == (ONE, q, q ** 2, q ** 3)


def test_rational_to_wseries_pole():
    with pytest.raises(PoleError):
        rational_to_wseries(1 / qw_w, 2)


def test_rational_to_wseries_cancels_common_w():
    f = qw_w / (qw_w * (1 + qw_w))
    assert rational_to_wseries(f, 2).coeffs == (ONE, -ONE, ONE)


def test_lift_w():
    assert lift_w(q / (1 + q)) == qw_q / (1 + qw_q)


def test_substitute_scale():
    s = WSeries([ONE, ONE, ONE]).substitute_scale(q)
    assert s.coeffs == (ONE, q, q ** 2)


def test_json_round_trip():
    x = (1 + q) / (2 - q ** 3) * q ** -2
    data = ratq_to_json(x)
    assert ratq_from_json(data) == x
    assert data["den"][-1][1:] == [1, 1]


def test_json_malformed():
    with pytest.raises(UsageError):
        ratq_from_json({"num": [[0, 1]]})
    with pytest.raises(DivisionByZero):
        ratq_from_json({"num": [[0, 1, 1]], "den": []})


@settings(max_examples=40, deadline=None)
@given(ratq_values, ratq_values, ratq_values)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if b:
        assert ratq_arith(a, b, 'div') * b == a


@settings(max_examples=40, deadline=None)
@given(ratq_values, ratq_values)
def test_valuation_is_additive(a, b):
    if a and b:
        assert valuation(a * b) == valuation(a) + valuation(b)


@settings(max_examples=30, deadline=None)
@given(ratq_values, ratq_values)
def test_series_multiplicative(a, b):
    Q = 10
    product = ratq_to_series(a, Q) * ratq_to_series(b, Q)
    assert product.truncate(Q) == ratq_to_series(a * b, Q)


def test_canonical_form_reduces():
    assert (1 - q ** 6) / (1 - q ** 4) == (1 + q ** 2 + q ** 4) / (1 + q ** 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_alternating_qbinom_sum_factorizes(n):
    total = sum((-qw_w) ** j * lift_w(qbinom(n, j)) for j in range(n + 1))
    product = 1
    for i in range(n):
        product *= qw_q ** (n - 1 - 2 * i) - qw_w
    assert total == product


@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_alternating_qbinom_sum_vanishes(n):
    for m in range(-n + 1, n, 2):
        assert sum((-q ** m) ** j * qbinom(n, j) for j in range(n + 1)) == ZERO
