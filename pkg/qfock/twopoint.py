# coding: utf-8
"""
Vacuum two-point functions

    g(t) = <m-1| z^t b°_{m-1} ^ z^-t b°_m ^ |m+1>

their recurrences, the closed forms of omega(w) = sum_t g(t) w^t, the
products phi(w) and theta(w), and the factorization omega = phi * theta
that fixes the boson commutators gamma_n.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence

from qfock.coeff import (
    ONE, ZERO, QSeries, QWMonomial, RatQ, WSeries, at_q0, lift_w, pochhammer, q, qbinom, qint, qw_w,
    ratq_str, ratq_to_json, ratq_to_series, rational_to_wseries, series_agree, series_exp, valuation,
)
from qfock.crystal import A1, PHI, A1Level, A2Even, A2Odd, AffineType, B1, D1, D2, Elem
from qfock.exceptions import UsageError
from qfock.fock import FockSpace, fock_space
from qfock.wedge import SymmetricLaurent, Tensor, accumulate, rel_base


logger = logging.getLogger(__name__)


def _monomial(x: RatQ, wdeg: int = 0) -> QWMonomial:
    """
    A signed power of q as a QWMonomial, optionally times w^wdeg.
    """
    v = valuation(x)
    return QWMonomial(at_q0(x * q ** -v), v, wdeg)


def _in_w(m: QWMonomial, wdeg: int) -> QWMonomial:
    return QWMonomial(m.coef, m.qexp, wdeg)


def _polymul(a: Sequence[RatQ], b: Sequence[RatQ]) -> List[RatQ]:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_series(coeffs: Sequence[RatQ], T: int, Q: int) -> WSeries:
    return WSeries([ratq_to_series(coeffs[t] if t < len(coeffs) else ZERO, Q) for t in range(T + 1)])


def _product(up: Sequence[QWMonomial], down: Sequence[QWMonomial], base: QWMonomial, T: int, Q: int) -> WSeries:
    """
    prod (a; base)_inf over ``up`` divided by the same over ``down``.
    """
    result = _poly_series([ONE], T, Q)
    for a in up:
        result = result * pochhammer(a, base, Q, T)
    for a in down:
        result = result / pochhammer(a, base, Q, T)
    return result


def _closed(num: Sequence[RatQ], den: Sequence[RatQ]):
    top = sum((lift_w(c) * qw_w ** t for t, c in enumerate(num)), lift_w(ZERO))
    bottom = sum((lift_w(c) * qw_w ** t for t, c in enumerate(den)), lift_w(ZERO))
    return top / bottom


class TwoPointData(object):
    """
    A computed two-point function: g(0..T), the closed omega and the checks.
    """

    def __init__(self, tp: "TwoPointFunction", T: int, Q: int):
        self.tp = tp
        self.T = T
        self.Q = Q
        self.g = [tp.g(t) for t in range(T + 1)]
        self.failures = tp.recurrence_check(T)
        self.omega_ok = tp.omega_check(T)
        self.factorization_ok = tp.factorization_check(T, Q)

    @property
    def residual_order(self) -> int:
        return min(self.failures) - 1 if self.failures else self.T

    @property
    def ok(self) -> bool:
        return not self.failures and self.omega_ok and self.factorization_ok

    def to_json(self) -> dict:
        return {
            'type': self.tp.atype.tag,
            'rank': self.tp.atype.n,
            'level': self.tp.atype.level,
            'kappa': self.tp.kappa,
            'm': self.tp.m,
            'g': [ratq_to_json(c) for c in self.g],
            'g_text': [ratq_str(c) for c in self.g],
            'omega_closed': str(self.tp.omega_closed().as_expr()),
            'residual_order': self.residual_order,
            'recurrence_failures': self.failures,
            'omega_ok': self.omega_ok,
            'factorization_ok': self.factorization_ok,
        }


class TwoPointFunction(object):
    """
    Base class of the family data.  Subclasses give the generating function
    omega = numerator / denominator as coefficient lists in w (so the
    recurrence sum_k den_k g(t-k) = num_t can be read off), the products
    phi and theta, gamma_n, and the printed relation combinations whose
    bracket proves the recurrence.
    """
    charge = 0
    boson_step = 1
    has_combination = True

    def __init__(self, atype: AffineType, kappa, space: Optional[FockSpace] = None):
        self.atype = atype
        self.kappa = kappa
        self.space = space or fock_space(atype, kappa)
        self.m = self.charge
        self.first = self.space.ground.b(self.m - 1)
        self.second = self.space.ground.b(self.m)
        self._g: Dict = {}

    def __repr__(self):
        return '{}({!r}, kappa={!r})'.format(type(self).__name__, self.atype, self.kappa)

    # g(t)

    def partner(self, j):
        return j if j == PHI else -j

    def pair(self, t: int, j=None):
        if j is None:
            return self.first.shift(t), self.second.shift(-t)
        if j not in self.atype.letters:
            raise UsageError('letter {!r} is not in the crystal of {}'.format(j, self.atype))
        return Elem(j, self.first.z + t), Elem(self.partner(j), self.second.z - t)

    def g(self, t: int, j=None) -> RatQ:
        key = (t, j)
        if key not in self._g:
            x, y = self.pair(t, j)
            self._g[key] = self.space.attach(self.m - 1, {(x, y): ONE}).coeff(())
            logger.debug('%r: g(%d) for j=%r computed', self, t, j)
        return self._g[key]

    # recurrence

    def numerator(self) -> List[RatQ]:
        raise NotImplementedError

    def denominator(self) -> List[RatQ]:
        raise NotImplementedError

    def residual(self, t: int) -> RatQ:
        num = self.numerator()
        total = -(num[t] if 0 <= t < len(num) else ZERO)
        for k, c in enumerate(self.denominator()):
            if c:
                total += c * self.g(t - k)
        return total

    def recurrence_check(self, T: int) -> List[int]:
        """
        The values of t in 0..T where the recurrence fails.
        """
        return [t for t in range(T + 1) if self.residual(t)]

    # generating functions

    def omega_closed(self):
        return _closed(self.numerator(), self.denominator())

    def omega_series(self, T: int) -> WSeries:
        return WSeries([self.g(t) for t in range(T + 1)])

    def omega_check(self, T: int) -> bool:
        return rational_to_wseries(self.omega_closed(), T) == self.omega_series(T)

    def phi_series(self, T: int, Q: int) -> WSeries:
        raise NotImplementedError

    def theta_closed(self, T: int, Q: int) -> WSeries:
        raise NotImplementedError

    def gamma(self, n: int) -> RatQ:
        raise NotImplementedError

    def theta_from_gamma(self, T: int, Q: int, gammas: Optional[Mapping[int, RatQ]] = None) -> WSeries:
        """
        exp(-sum_n w^(step n) / gamma_n); values in ``gammas`` override the
        closed formula.
        """
        gammas = gammas or {}
        exponent = [QSeries.zero(Q) for _ in range(T + 1)]
        for n in range(1, T // self.boson_step + 1):
            value = gammas.get(n, None) or self.gamma(n)
            exponent[self.boson_step * n] = ratq_to_series(-1 / value, Q)
        return series_exp(WSeries(exponent))

    def factorization_check(self, T: int, Q: int, gammas: Optional[Mapping[int, RatQ]] = None) -> bool:
        theta = self.theta_from_gamma(T, Q, gammas)
        if not series_agree(theta, self.theta_closed(T, Q), T, Q):
            return False
        return series_agree(self.omega_series(T), self.phi_series(T, Q) * theta, T, Q)

    # relation combinations

    def combination(self, t: int) -> Tensor:
        raise UsageError('no relation combination is recorded for {!r}'.format(self))

    def _zc(self, out: Tensor, coef, t: int, d: int, i, j, zz: bool = False):
        """
        out += coef * Z(t, d) [(z (x) z)] C_{i,j}.
        """
        if not coef:
            return
        tensor = rel_base(self.atype, i, j)
        if zz:
            tensor = {(x.shift(1), y.shift(1)): c for (x, y), c in tensor.items()}
        for pair, c in SymmetricLaurent.z_operator(t, d).apply(tensor).items():
            accumulate(out, pair, coef * c)

    def combination_check(self, T: int) -> List[int]:
        """
        The values of t in 0..T where <m-1| A_t ^ |m+1> does not vanish.
        """
        failures = []
        for t in range(T + 1):
            if self.space.attach(self.m - 1, self.combination(t)):
                failures.append(t)
        return failures

    def data(self, T: int, Q: int) -> TwoPointData:
        return TwoPointData(self, T, Q)


class LevelOneTwoPoint(TwoPointFunction):
    """
    A^(2)_2n, B^(1)_n, A^(2)_(2n-1) and D^(1)_n.  With the signed xi of the
    type, omega = (1-w)(1+p xi w)^e / ((1-p^2 w)(1-xi w)) where e = 1 only
    for A^(2)_2n and B^(1)_n at kappa=0.
    """

    def __init__(self, atype: AffineType, kappa, charge: int, extra: bool):
        self.charge = charge
        self.extra = extra
        super().__init__(atype, kappa)
        self.p, self.xi = atype.p, atype.xi

    def numerator(self):
        p, xi = self.p, self.xi
        return _polymul([ONE, -ONE], [ONE, p * xi] if self.extra else [ONE])

    def denominator(self):
        p, xi = self.p, self.xi
        return _polymul([ONE, -p ** 2], [ONE, -xi])

    def phi_series(self, T, Q):
        P, X = _monomial(self.p), _monomial(self.xi)
        X2 = X * X
        up = [_in_w(P * P * X2, 1), _in_w(X2 * X, 1)]
        down = [_in_w(P * P * X, 1), _in_w(X2, 1)]
        phi = _product(up, down, X2, T, Q)
        if self.extra:
            phi = phi * _poly_series([ONE, self.p * self.xi], T, Q)
        return phi

    def theta_closed(self, T, Q):
        P, X = _monomial(self.p), _monomial(self.xi)
        X2 = X * X
        up = [QWMonomial(1, 0, 1), _in_w(P * P * X, 1)]
        down = [_in_w(P * P, 1), _in_w(X, 1)]
        return _product(up, down, X2, T, Q)

    def gamma(self, n):
        if n <= 0:
            raise UsageError('gamma_n needs n > 0, got {}'.format(n))
        return n * (1 + self.xi ** n) / (1 - self.p ** (2 * n))


class A2EvenTwoPoint(LevelOneTwoPoint):

    def __init__(self, atype: A2Even, kappa=0):
        super().__init__(atype, kappa, 0, True)

    def combination(self, t):
        n, p, h = self.atype.n, self.p, self.atype.dual_coxeter
        out: Tensor = {}
        self._zc(out, ONE, t, 1, 0, 0)
        self._zc(out, -p ** (h + 1), t - 1, 1, 0, 0)
        c = qint(2) * (1 - p ** 2) * (-p) ** (n + 1)
        for j in range(1, n + 1):
            self._zc(out, c * (-p) ** -j, t - 1, 0, j, -j)
            self._zc(out, -c * (-p) ** j, t - 1, 1, -j, j)
        return out


class B1TwoPoint(LevelOneTwoPoint):

    def __init__(self, atype: B1, kappa=0):
        super().__init__(atype, kappa, 0, kappa == 0)

    def combination(self, t):
        n, p, h, k = self.atype.n, self.p, self.atype.dual_coxeter, self.kappa
        d0, d1 = (1, 0) if k == 0 else (0, 1)
        two = qint(2)
        out: Tensor = {}
        self._zc(out, ONE, t, 1 + k, 0, 0)
        self._zc(out, p ** (1 + h * d0), t + k - 1, 1 + k, 0, 0)
        self._zc(out, two * (-p) ** n, t - 1, k, 1, -1)
        for j in range(2, n + 1):
            self._zc(out, two * (1 - p ** 2) * (-p) ** (n + 1 - j), t - 1, k, j, -j)
        c = two * p ** (-h * d1)
        for j in range(2, n + 1):
            self._zc(out, c * (1 - p ** 2) * (-p) ** (n + j - 1), t + k - 1, 1 + k, -j, j)
        self._zc(out, c * (-p) ** n, t + k, 2 + k, -1, 1)
        return out


class A2OddTwoPoint(LevelOneTwoPoint):

    def __init__(self, atype: A2Odd, kappa=1):
        super().__init__(atype, kappa, 0, False)

    def combination(self, t):
        n, h = self.atype.n, self.atype.dual_coxeter
        out: Tensor = {}
        self._zc(out, ONE, t, 1, -1, 1, zz=True)
        for j in range(2, n + 1):
            self._zc(out, (1 - q ** 2) * (-q) ** (j - 1), t, 2, -j, j)
        self._zc(out, -q ** h, t - 1, 1, 1, -1)
        for j in range(2, n + 1):
            self._zc(out, -q ** h * (1 - q ** 2) * (-q) ** (1 - j), t - 1, 1, j, -j)
        return out


class D1TwoPoint(LevelOneTwoPoint):

    def __init__(self, atype: D1, kappa=0):
        super().__init__(atype, kappa, 1, False)

    def combination(self, t):
        n, h = self.atype.n, self.atype.dual_coxeter
        sign = (-q) ** (n - 1)
        out: Tensor = {}
        self._zc(out, ONE, t, 1, n, -n)
        self._zc(out, -q ** h, t - 1, 1, -n, n)
        self._zc(out, sign, t - 1, 0, 1, -1)
        for j in range(2, n):
            self._zc(out, (1 - q ** 2) * (-q) ** (n - j), t - 1, 0, j, -j)
        self._zc(out, -sign, t - 1, 0, -1, 1, zz=True)
        for j in range(2, n):
            self._zc(out, -sign * (1 - q ** 2) * (-q) ** (j - 1), t - 1, 1, -j, j)
        return out


class D2TwoPoint(TwoPointFunction):
    """
    D^(2)_(n+1) at kappa=0, where omega only sees even powers of w in its
    denominator: omega = (1-w)(1+p xi^2 w^2) / ((1-p^2 w^2)(1-xi^2 w^2)).
    """

    def __init__(self, atype: D2, kappa=0, space: Optional[FockSpace] = None):
        super().__init__(atype, kappa, space)
        self.p, self.xi = atype.p, atype.xi

    def prefix(self) -> List[RatQ]:
        return [ONE, -ONE]

    def numerator(self):
        return _polymul(self.prefix(), [ONE, ZERO, self.p * self.xi ** 2])

    def denominator(self):
        return _polymul([ONE, ZERO, -self.p ** 2], [ONE, ZERO, -self.xi ** 2])

    def phi_series(self, T, Q):
        P, X = _monomial(self.p), _monomial(self.xi)
        X2 = X * X
        X4 = X2 * X2
        up = [_in_w(X4 * X2, 2), _in_w(P * P * X4, 2)]
        down = [_in_w(X4, 2), _in_w(P * P * X2, 2)]
        return _product(up, down, X4, T, Q) * _poly_series([ONE, ZERO, self.p * self.xi ** 2], T, Q)

    def theta_closed(self, T, Q):
        P, X = _monomial(self.p), _monomial(self.xi)
        X2 = X * X
        X4 = X2 * X2
        up = [_in_w(X4, 2), _in_w(P * P * X2, 2)]
        down = [_in_w(X2, 2), _in_w(P * P, 2)]
        return _product(up, down, X4, T, Q) * _poly_series(self.prefix(), T, Q)

    def gamma(self, n):
        if n <= 0:
            raise UsageError('gamma_n needs n > 0, got {}'.format(n))
        if n % 2:
            return n * ONE
        return n * (1 + self.xi ** n) / (1 - 2 * self.p ** n - self.xi ** n)

    def combination(self, t):
        n, p, h = self.atype.n, self.p, self.atype.dual_coxeter
        two = qint(2)
        out: Tensor = {}
        self._zc(out, ONE, t, 1, 0, 0, zz=True)
        self._zc(out, p ** (h + 1), t - 1, 3, 0, 0)
        self._zc(out, -two * q * (-p) ** n, t - 1, 1, PHI, PHI, zz=True)
        for j in range(1, n + 1):
            self._zc(out, two * (1 - p ** 2) * (-p) ** (n + 1 - j), t - 1, 1, j, -j)
            self._zc(out, -two * (1 - p ** 2) * (-p) ** (n + j), t - 1, 3, -j, j)
        return out


class D2EvenTwoPoint(D2TwoPoint):
    """
    The same two-point function on the component V_0 (x) z^2Z + v_phi (x)
    z^(2Z+1), where the ground state is b°_m = b_0 for every m and the
    bosons shift by z^2.
    """
    boson_step = 2
    has_combination = False

    def __init__(self, atype: D2):
        even = D2(atype.n, even=True)
        super().__init__(even, 'even', FockSpace(even, 0))

    def g(self, t, j=None):
        x, y = self.pair(t, j)
        if not (self.atype.admits(x) and self.atype.admits(y)):
            return ZERO
        return super().g(t, j)

    def prefix(self):
        return [ONE, ZERO, -ONE]

    def gamma(self, n):
        if n <= 0:
            raise UsageError('gamma_n needs n > 0, got {}'.format(n))
        return n * (1 + self.xi ** (2 * n)) / (1 - self.p ** (2 * n))

    def combination(self, t):
        return TwoPointFunction.combination(self, t)


class LevelKTwoPoint(TwoPointFunction):
    """
    A^(1)_1 at level k:  omega = (1-w) S(w) / prod_{j=1..k} (1 - q^2j w) with
    S(w) = sum_p (q^(k+2) w)^p [kappa, p] [k-kappa, p].
    """

    def __init__(self, atype: A1Level, kappa=0):
        super().__init__(atype, kappa)
        self.k = atype.level
        self.dual = self.k - kappa

    def partner(self, j):
        return self.k - j

    def pair(self, t, j=None):
        if j is None:
            return super().pair(t)
        if j not in self.atype.letters:
            raise UsageError('letter {!r} is not in the crystal of {}'.format(j, self.atype))
        return Elem(j, t), Elem(self.partner(j), 1 - j - t)

    def series_s(self) -> List[RatQ]:
        k = self.k
        return [q ** ((k + 2) * p) * qbinom(self.kappa, p) * qbinom(self.dual, p)
                for p in range(min(self.kappa, self.dual) + 1)]

    def numerator(self):
        return _polymul([ONE, -ONE], self.series_s())

    def denominator(self):
        k = self.k
        return [(-q ** (k + 1)) ** a * qbinom(k, a) for a in range(k + 1)]

    def phi_series(self, T, Q):
        k = self.k
        base = QWMonomial(1, 4, 0)
        phi = _product([QWMonomial(1, 2 * (k + 2), 1)], [QWMonomial(1, 4, 1)], base, T, Q)
        return phi * _poly_series(self.series_s(), T, Q)

    def theta_closed(self, T, Q):
        k = self.k
        base = QWMonomial(1, 4, 0)
        theta = _product([QWMonomial(1, 4, 1)], [QWMonomial(1, 2 * (k + 2), 1)], base, T, Q)
        theta = theta * _poly_series([ONE, -ONE], T, Q)
        for j in range(1, k + 1):
            theta = theta / _poly_series([ONE, -q ** (2 * j)], T, Q)
        return theta

    def gamma(self, n):
        if n <= 0:
            raise UsageError('gamma_n needs n > 0, got {}'.format(n))
        k = self.k
        return n * (1 - q ** (4 * n)) / (1 - q ** (2 * n) - q ** (4 * n) + q ** (2 * (k + 1) * n))

    def combination(self, t):
        k, kappa = self.k, self.kappa
        out: Tensor = {}
        for i in range(k + 1):
            for g in range(kappa + 1):
                c = (-q ** (kappa + 1)) ** (k - i - kappa) * q ** (g * (k + 2))
                c *= qbinom(i, g) * qbinom(k - i, kappa - g)
                self._zc(out, c, t - g, -i + self.dual + 1, k - i, i)
        return out


@lru_cache(maxsize=None)
def two_point(atype: AffineType, kappa=None) -> TwoPointFunction:
    """
    The two-point function of a family and ground state branch.  Level-1
    A^(1)_1 is served by the level-k data at k=1.
    """
    if isinstance(atype, A1):
        if atype.n != 1:
            raise UsageError('two-point data for a1 exists only at rank 1, got {}'.format(atype.n))
        if kappa not in (None, 0):
            raise UsageError('a1 has the single branch kappa=0')
        return LevelKTwoPoint(A1Level(1), 1)
    if isinstance(atype, A1Level):
        return LevelKTwoPoint(atype, atype.kappas[0] if kappa is None else _kappa(atype, kappa))
    if isinstance(atype, A2Even):
        return A2EvenTwoPoint(atype, _kappa(atype, 0 if kappa is None else kappa))
    if isinstance(atype, B1):
        return B1TwoPoint(atype, _kappa(atype, 0 if kappa is None else kappa))
    if isinstance(atype, A2Odd):
        return A2OddTwoPoint(atype, _kappa(atype, 1 if kappa is None else kappa))
    if isinstance(atype, D1):
        if kappa not in (None, 0):
            raise UsageError('two-point data for d1 is recorded on the kappa=0 branch only')
        return D1TwoPoint(atype, 0)
    if isinstance(atype, D2):
        if kappa == 'even':
            return D2EvenTwoPoint(atype)
        if kappa not in (None, 0):
            raise UsageError('two-point data for d2 is recorded for kappa=0 and kappa="even" only')
        return D2TwoPoint(atype, 0)
    raise UsageError('no two-point data for {!r}'.format(atype))


def _kappa(atype: AffineType, kappa):
    if kappa not in atype.kappas:
        raise UsageError('kappa {!r} not valid for {}; choose from {!r}'.format(kappa, atype, atype.kappas))
    return kappa


def g_compute(atype: AffineType, kappa, t: int, j=None) -> RatQ:
    return two_point(atype, kappa).g(t, j)


def recurrence_check(atype: AffineType, kappa, T: int) -> List[int]:
    return two_point(atype, kappa).recurrence_check(T)


def omega_closed(atype: AffineType, kappa=None):
    return two_point(atype, kappa).omega_closed()


def omega_series(atype: AffineType, kappa, T: int) -> WSeries:
    return two_point(atype, kappa).omega_series(T)


def phi_series(atype: AffineType, kappa, T: int, Q: int) -> WSeries:
    return two_point(atype, kappa).phi_series(T, Q)


def theta_from_gamma(atype: AffineType, kappa, T: int, Q: int,
                     gammas: Optional[Mapping[int, RatQ]] = None) -> WSeries:
    return two_point(atype, kappa).theta_from_gamma(T, Q, gammas)


def theta_closed(atype: AffineType, kappa, T: int, Q: int) -> WSeries:
    return two_point(atype, kappa).theta_closed(T, Q)


def gamma_closed(atype: AffineType, kappa, n: int) -> RatQ:
    """
    The closed gamma_n; for A^(1)_n at level 1 this is
    n (1 - xi^2n) / (1 - q^2n) at every rank.
    """
    if isinstance(atype, A1):
        if n <= 0:
            raise UsageError('gamma_n needs n > 0, got {}'.format(n))
        return n * (1 - atype.xi ** (2 * n)) / (1 - q ** (2 * n))
    return two_point(atype, kappa).gamma(n)


def fock_gammas(atype: AffineType, kappa, count: int) -> Dict[int, RatQ]:
    """
    gamma_1 .. gamma_count from the boson commutator on the Fock space.
    """
    tp = two_point(atype, kappa)
    return {n: tp.space.gamma(n, tp.m) for n in range(1, count + 1)}


def factorization_check(atype: AffineType, kappa, T: int, Q: int,
                        gammas: Optional[Mapping[int, RatQ]] = None) -> bool:
    return two_point(atype, kappa).factorization_check(T, Q, gammas)
