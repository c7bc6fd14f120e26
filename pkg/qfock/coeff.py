# coding: utf-8
"""
Exact scalars: the field Q(q), truncated q-series and truncated series in an
auxiliary variable w whose coefficients are either Q(q) elements or q-series.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence

from sympy import QQ
from sympy.polys.fields import field

from qfock.exceptions import DivergentProductError, DivisionByZero, PoleError, UsageError


logger = logging.getLogger(__name__)

K, q = field("q", QQ)
RatQ = type(q)

# Bivariate field used for closed forms in (q, w); the second generator
# doubles as the spectral parameter z of the R-matrix code.
KW, qw_q, qw_w = field("q,w", QQ)

ZERO = K.zero
ONE = K.one


def to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def ratq(value) -> RatQ:
    """
    Coerce an int, a Fraction or a RatQ into Q(q).
    """
    if isinstance(value, RatQ):
        return value
    if isinstance(value, Fraction):
        return K(QQ(value.numerator, value.denominator))
    if isinstance(value, int):
        return K(value)
    raise UsageError('cannot coerce {!r} into Q(q)'.format(value))


def qpow(e: int) -> RatQ:
    return q ** e


def ratq_arith(a, b, op: str) -> RatQ:
    a, b = ratq(a), ratq(b)
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    if op == 'div':
        if not b:
            raise DivisionByZero('division of {} by zero'.format(a))
        return a / b
    raise UsageError('unknown operation {!r}'.format(op))


def qint(n: int, i_scale: int = 1) -> RatQ:
    """
    [n]_i = (q_i^n - q_i^-n) / (q_i - q_i^-1) with q_i = q^i_scale.
    """
    if n == 0:
        return ZERO
    b = q ** i_scale
    return (b ** n - b ** -n) / (b - b ** -1)


def qfact(n: int, i_scale: int = 1) -> RatQ:
    result = ONE
    for k in range(1, n + 1):
        result *= qint(k, i_scale)
    return result


def qbinom(m: int, n: int, i_scale: int = 1) -> RatQ:
    if not m >= n >= 0:
        return ZERO
    result = ONE
    for k in range(n):
        result *= qint(m - k, i_scale)
    return result / qfact(n, i_scale)


def _lowest(poly) -> int:
    return min(monom[0] for monom in poly.monoms())


def valuation(x) -> Optional[int]:
    """
    q-adic valuation; None for zero.
    """
    x = ratq(x)
    if not x:
        return None
    return _lowest(x.numer) - _lowest(x.denom)


def _poly_terms(poly) -> Dict[int, Fraction]:
    return {monom[0]: to_fraction(c) for monom, c in poly.terms()}


def at_q0(x) -> Fraction:
    """
    Value at q = 0 of an element without pole there.
    """
    x = ratq(x)
    v = valuation(x)
    if v is None or v > 0:
        return Fraction(0)
    if v < 0:
        raise PoleError('{} has a pole at q=0'.format(x))
    num, den = _poly_terms(x.numer), _poly_terms(x.denom)
    return num[min(num)] / den[min(den)]


def at_value(x, value) -> Fraction:
    """
    Evaluate at a rational point q = value.
    """
    x = ratq(x)
    value = Fraction(value)

    def evaluate(terms):
        return sum((c * value ** e for e, c in terms.items()), Fraction(0))

    den = evaluate(_poly_terms(x.denom))
    if den == 0:
        raise PoleError('{} has a pole at q={}'.format(x, value))
    return evaluate(_poly_terms(x.numer)) / den


def from_terms(terms: Dict[int, Fraction]) -> RatQ:
    result = ZERO
    for e, c in terms.items():
        result += ratq(Fraction(c)) * q ** e
    return result


def _normal_parts(x):
    """
    Numerator as a Laurent polynomial and denominator with nonzero
    constant term and leading coefficient 1.
    """
    num, den = _poly_terms(x.numer), _poly_terms(x.denom)
    shift = min(den)
    lead = den[max(den)]
    num = {e - shift: c / lead for e, c in num.items()}
    den = {e - shift: c / lead for e, c in den.items()}
    return num, den


def ratq_to_json(x) -> dict:
    num, den = _normal_parts(ratq(x))

    def encode(terms):
        return [[e, c.numerator, c.denominator] for e, c in sorted(terms.items())]

    return {"num": encode(num), "den": encode(den)}


def ratq_from_json(data: dict) -> RatQ:
    try:
        num = {int(e): Fraction(int(n), int(d)) for e, n, d in data["num"]}
        den = {int(e): Fraction(int(n), int(d)) for e, n, d in data["den"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError('malformed RatQ encoding {!r}'.format(data)) from exc
    denominator = from_terms(den)
    if not denominator:
        raise DivisionByZero('zero denominator in {!r}'.format(data))
    return from_terms(num) / denominator


def ratq_str(x) -> str:
    x = ratq(x)
    return str(x.as_expr())


class QSeries(object):
    """
    Truncated Laurent series in q: every coefficient below ``order`` is exact.
    """
    __slots__ = ('terms', 'order')

    def __init__(self, terms: Dict[int, Fraction], order: int):
        self.order = order
        self.terms = {e: Fraction(c) for e, c in terms.items() if c and e < order}

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls({}, order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls({0: Fraction(1)}, order)

    @classmethod
    def monomial(cls, coef, e: int, order: int) -> "QSeries":
        return cls({e: Fraction(coef)}, order)

    def valuation(self) -> int:
        return min(self.terms) if self.terms else self.order

    def coeff(self, e: int) -> Fraction:
        if e >= self.order:
            raise UsageError('coefficient q^{} lies beyond the truncation order {}'.format(e, self.order))
        return self.terms.get(e, Fraction(0))

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.terms, min(order, self.order))

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, RatQ):
            return ratq_to_series(other, self.order)
        return QSeries({0: Fraction(other)}, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return QSeries(terms, order)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries({e: c * other for e, c in self.terms.items()}, self.order)
        other = self._coerce(other)
        order = min(self.order + other.valuation(), other.order + self.valuation())
        terms: Dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                if e1 + e2 < order:
                    terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return QSeries(terms, order)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        if not self.terms:
            raise DivisionByZero('inverse of a q-series that vanishes to order {}'.format(self.order))
        v = self.valuation()
        unit = {e - v: c for e, c in self.terms.items()}
        n = self.order - v
        b: List[Fraction] = []
        for k in range(n):
            acc = Fraction(1) if k == 0 else Fraction(0)
            for j in range(1, k + 1):
                acc -= unit.get(j, 0) * b[k - j]
            b.append(acc / unit[0])
        return QSeries({k - v: c for k, c in enumerate(b)}, n - 2 * v)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero('q-series divided by zero')
            return QSeries({e: c / other for e, c in self.terms.items()}, self.order)
        return self * self._coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.order == other.order and self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        body = ' + '.join('{}*q^{}'.format(c, e) for e, c in sorted(self.terms.items())) or '0'
        return 'QSeries({} + O(q^{}))'.format(body, self.order)


def ratq_to_series(x, Q: int) -> QSeries:
    """
    Expand a Q(q) element in q, exact below q^Q.
    """
    x = ratq(x)
    if not x:
        return QSeries.zero(Q)
    num, den = _poly_terms(x.numer), _poly_terms(x.denom)
    v = min(den)
    # enough precision on both sides so the quotient is exact below Q
    width = max(Q - valuation(x), 0) + 1
    numerator = QSeries({e - v: c for e, c in num.items()}, Q + width)
    denominator = QSeries({e - v: c for e, c in den.items()}, width)
    return (numerator * denominator.inverse()).truncate(Q)


def _zero_like(c):
    return c * 0


class WSeries(object):
    """
    Truncated power series in w; ``coeffs[t]`` is the w^t coefficient, t <= T.
    """
    __slots__ = ('coeffs',)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise UsageError('a w-series needs at least its constant term')
        self.coeffs = tuple(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, t):
        return self.coeffs[t]

    def __len__(self):
        return len(self.coeffs)

    def map(self, fn: Callable) -> "WSeries":
        return WSeries([fn(c) for c in self.coeffs])

    def truncate(self, T: int) -> "WSeries":
        return WSeries(self.coeffs[:T + 1])

    def __add__(self, other):
        T = min(self.order, other.order)
        return WSeries([self[t] + other[t] for t in range(T + 1)])

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, WSeries):
            return self.map(lambda c: c * other)
        T = min(self.order, other.order)
        out = []
        for t in range(T + 1):
            acc = _zero_like(self[0])
            for j in range(t + 1):
                acc = acc + self[j] * other[t - j]
            out.append(acc)
        return WSeries(out)

    def inverse(self) -> "WSeries":
        c0 = self[0]
        if isinstance(c0, QSeries):
            inv0 = c0.inverse()
        else:
            if not c0:
                raise DivisionByZero('w-series with zero constant term is not invertible')
            inv0 = 1 / c0
        out = [inv0]
        for t in range(1, self.order + 1):
            acc = _zero_like(c0)
            for j in range(1, t + 1):
                acc = acc + self[j] * out[t - j]
            out.append(-acc * inv0)
        return WSeries(out)

    def __truediv__(self, other):
        if not isinstance(other, WSeries):
            return self.map(lambda c: c / other)
        return self * other.inverse()

    def substitute_scale(self, factor) -> "WSeries":
        """
        w -> factor * w.
        """
        out, power = [self.coeffs[0]], factor
        for c in self.coeffs[1:]:
            out.append(c * power)
            power = power * factor
        return WSeries(out)

    def __eq__(self, other):
        if isinstance(other, WSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self):
        return 'WSeries({!r})'.format(list(self.coeffs))


def series_exp(s: WSeries) -> WSeries:
    """
    exp of a w-series with zero constant term, via n e_n = sum k s_k e_{n-k}.
    """
    if isinstance(s[0], QSeries) and s[0].terms or not isinstance(s[0], QSeries) and s[0]:
        raise UsageError('exp needs a zero constant term')
    one = s[0] + 1
    out = [one]
    for n in range(1, s.order + 1):
        acc = _zero_like(one)
        for k in range(1, n + 1):
            acc = acc + s[k] * out[n - k] * k
        out.append(acc / n)
    return WSeries(out)


def series_log(f: WSeries) -> WSeries:
    """
    log of a w-series with constant term 1.
    """
    one = f[0]
    if isinstance(one, QSeries):
        is_one = one.terms == {0: Fraction(1)}
    else:
        is_one = one == 1
    if not is_one:
        raise UsageError('log needs constant term 1')
    out = [_zero_like(one)]
    for n in range(1, f.order + 1):
        acc = f[n] * n
        for k in range(1, n):
            acc = acc - out[k] * f[n - k] * k
        out.append(acc / n)
    return WSeries(out)


class QWMonomial(NamedTuple):
    """
    coef * q^qexp * w^wdeg with a rational coefficient.
    """
    coef: Fraction
    qexp: int
    wdeg: int = 0

    def __mul__(self, other):
        return QWMonomial(self.coef * other.coef, self.qexp + other.qexp, self.wdeg + other.wdeg)

    def __pow__(self, k):
        return QWMonomial(Fraction(self.coef) ** k, self.qexp * k, self.wdeg * k)


def mono(coef=1, qexp=0, wdeg=0) -> QWMonomial:
    return QWMonomial(Fraction(coef), qexp, wdeg)


def pochhammer(a: QWMonomial, base: QWMonomial, Q: int, T: int) -> WSeries:
    """
    (a; base)_inf = prod_{k>=0} (1 - a base^k), truncated at w^T and q^Q.
    """
    if base.wdeg != 0 or base.qexp <= 0:
        raise DivergentProductError('Pochhammer base {} must have positive q-valuation'.format(base))
    coeffs = [QSeries.one(Q)] + [QSeries.zero(Q) for _ in range(T)]
    result = WSeries(coeffs)
    k = 0
    while True:
        factor = a * base ** k
        if factor.qexp >= Q and factor.qexp >= 0:
            break
        if factor.wdeg <= T:
            terms = [QSeries.one(Q)] + [QSeries.zero(Q) for _ in range(T)]
            terms[factor.wdeg] = terms[factor.wdeg] - QSeries.monomial(factor.coef, factor.qexp, Q)
            result = result * WSeries(terms)
        k += 1
    return result


def _split_by_w(poly) -> Dict[int, RatQ]:
    parts: Dict[int, Dict[int, Fraction]] = {}
    for (qe, we), c in poly.terms():
        parts.setdefault(we, {})
        parts[we][qe] = parts[we].get(qe, 0) + to_fraction(c)
    return {we: from_terms(terms) for we, terms in parts.items()}


def rational_to_wseries(f, T: int) -> WSeries:
    """
    Expand an element of Q(q, w) as a power series in w with Q(q) coefficients.
    """
    num, den = _split_by_w(f.numer), _split_by_w(f.denom)
    if min(den) != 0:
        shift = min(den)
        if min(num) < shift:
            raise PoleError('{} has a pole at w=0'.format(f.as_expr()))
        num = {e - shift: c for e, c in num.items()}
        den = {e - shift: c for e, c in den.items()}
    numerator = WSeries([num.get(t, ZERO) for t in range(T + 1)])
    denominator = WSeries([den.get(t, ZERO) for t in range(T + 1)])
    return numerator / denominator


def lift_w(x) -> "KW":
    """
    Embed a Q(q) element into Q(q, w).
    """
    x = ratq(x)

    def lift(poly):
        result = KW.zero
        for (e,), c in poly.terms():
            result += KW(QQ(int(c.numerator), int(c.denominator))) * qw_q ** e
        return result

    return lift(x.numer) / lift(x.denom)


def series_of(s: WSeries, Q: int) -> WSeries:
    """
    Convert Q(q) coefficients to q-series truncated at q^Q.
    """
    return s.map(lambda c: c.truncate(Q) if isinstance(c, QSeries) else ratq_to_series(c, Q))


def series_agree(a: WSeries, b: WSeries, T: int, Q: int) -> bool:
    a, b = series_of(a, Q), series_of(b, Q)
    for t in range(T + 1):
        x, y = a[t].truncate(Q), b[t].truncate(Q)
        low = min(x.order, y.order)
        if x.truncate(low).terms != y.truncate(low).terms:
            return False
    return True


def sum_ratq(values: Iterable) -> RatQ:
    total = ZERO
    for v in values:
        total += v
    return total
